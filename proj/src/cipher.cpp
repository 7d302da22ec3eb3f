#include "qg/cipher.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qg {

namespace {

void check_origin(const Message& message, Origin expected, const char* what) {
    if (message.origin != expected) {
        throw std::invalid_argument(std::string(what) + ": message has the wrong origin tag");
    }
}

void check_symbols(const Message& message, int q, const char* what) {
    for (Symbol s : message.symbols) {
        if (s >= q) {
            throw std::out_of_range(std::string(what) + ": symbol " + std::to_string(s) +
                                    " outside alphabet of order " + std::to_string(q));
        }
    }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

} // namespace

LeaderBlock::LeaderBlock(int arity, std::vector<Symbol> leaders)
    : arity_(arity), leaders_(std::move(leaders)) {
    if (arity < 2) throw std::invalid_argument("leader block arity must be at least 2");
    const std::size_t expected = static_cast<std::size_t>(arity - 1) * (arity - 1);
    if (leaders_.size() != expected) {
        throw std::invalid_argument("leader block needs (n-1)^2 = " + std::to_string(expected) +
                                    " symbols, got " + std::to_string(leaders_.size()));
    }
}

LeaderBlock LeaderBlock::random(int arity, const Alphabet& alphabet, SplitMix64& rng) {
    const std::size_t count = static_cast<std::size_t>(arity - 1) * (arity - 1);
    std::vector<Symbol> leaders(count);
    for (auto& l : leaders) {
        l = static_cast<Symbol>(rng.next_below(static_cast<std::uint64_t>(alphabet.q())));
    }
    return LeaderBlock(arity, std::move(leaders));
}

std::span<const Symbol> LeaderBlock::prefix(int j) const {
    if (j < 1 || j >= arity_) throw std::out_of_range("leader prefix index must be in 1..n-1");
    const std::size_t len = static_cast<std::size_t>(arity_ - 1);
    return {leaders_.data() + (static_cast<std::size_t>(j) - 1) * len, len};
}

StreamEncryptor::StreamEncryptor(const QuasigroupKey& key, LeaderBlock leaders)
    : key_(key), leaders_(std::move(leaders)) {
    if (leaders_.arity() != key.arity()) {
        throw std::invalid_argument("leader block arity does not match the key");
    }
}

Symbol StreamEncryptor::push(Symbol plain) {
    const std::size_t n = static_cast<std::size_t>(key_.arity());
    std::vector<Symbol> args;
    args.reserve(n);
    if (position_ < n - 1) {
        const auto prefix = leaders_.prefix(static_cast<int>(position_) + 1);
        args.assign(prefix.begin(), prefix.end());
    } else {
        args.assign(window_.begin(), window_.end());
    }
    args.push_back(plain);
    const Symbol v = key_.apply(args);

    window_.push_back(v);
    if (window_.size() > n - 1) window_.erase(window_.begin());
    ++position_;
    return v;
}

StreamDecryptor::StreamDecryptor(const QuasigroupKey& key, LeaderBlock leaders)
    : inverse_(inverse_op(key, key.arity())), leaders_(std::move(leaders)) {
    if (leaders_.arity() != key.arity()) {
        throw std::invalid_argument("leader block arity does not match the key");
    }
}

Symbol StreamDecryptor::push(Symbol cipher) {
    const std::size_t n = static_cast<std::size_t>(inverse_.arity());
    std::vector<Symbol> args;
    args.reserve(n);
    if (position_ < n - 1) {
        const auto prefix = leaders_.prefix(static_cast<int>(position_) + 1);
        args.assign(prefix.begin(), prefix.end());
    } else {
        args.assign(window_.begin(), window_.end());
    }
    args.push_back(cipher);
    const Symbol u = inverse_.apply(args);

    window_.push_back(cipher);
    if (window_.size() > n - 1) window_.erase(window_.begin());
    ++position_;
    return u;
}

Message encrypt_binary(const QuasigroupKey& key, Symbol leader, const Message& plain) {
    if (key.arity() != 2) throw std::invalid_argument("binary engine needs an arity-2 key");
    return encrypt_nary(key, LeaderBlock(2, {leader}), plain);
}

Message decrypt_binary(const QuasigroupKey& key, Symbol leader, const Message& cipher) {
    if (key.arity() != 2) throw std::invalid_argument("binary engine needs an arity-2 key");
    return decrypt_nary(key, LeaderBlock(2, {leader}), cipher);
}

Message encrypt_nary(const QuasigroupKey& key, const LeaderBlock& leaders, const Message& plain) {
    check_origin(plain, Origin::plain, "encrypt");
    check_symbols(plain, key.q(), "encrypt");
    StreamEncryptor engine(key, leaders);
    std::vector<Symbol> out;
    out.reserve(plain.size());
    for (Symbol u : plain.symbols) out.push_back(engine.push(u));
    return Message::cipher(std::move(out));
}

Message decrypt_nary(const QuasigroupKey& key, const LeaderBlock& leaders, const Message& cipher) {
    check_origin(cipher, Origin::cipher, "decrypt");
    check_symbols(cipher, key.q(), "decrypt");
    StreamDecryptor engine(key, leaders);
    std::vector<Symbol> out;
    out.reserve(cipher.size());
    for (Symbol v : cipher.symbols) out.push_back(engine.push(v));
    return Message::plain(std::move(out));
}

std::vector<Symbol> encrypt_block(const OrthogonalSystem& system, std::span<const Symbol> block) {
    return system.apply(block);
}

std::vector<Symbol> decrypt_block(const OrthogonalSystem& system, std::span<const Symbol> block) {
    return inverse_system(system).apply(block);
}

std::vector<Symbol> encrypt_block_rounds(const OrthogonalSystem& system,
                                         std::span<const Symbol> block, std::uint64_t rounds) {
    if (rounds < 1) throw std::invalid_argument("round count must be at least 1");
    std::vector<Symbol> state(block.begin(), block.end());
    for (std::uint64_t r = 0; r < rounds; ++r) state = system.apply(state);
    return state;
}

std::vector<Symbol> decrypt_block_rounds(const OrthogonalSystem& system,
                                         std::span<const Symbol> block, std::uint64_t rounds) {
    if (rounds < 1) throw std::invalid_argument("round count must be at least 1");
    const OrthogonalSystem inverse = inverse_system(system);
    std::vector<Symbol> state(block.begin(), block.end());
    for (std::uint64_t r = 0; r < rounds; ++r) state = inverse.apply(state);
    return state;
}

namespace {

/// Pads a short final chunk by cyclically repeating its own symbols.
std::vector<Symbol> padded_chunk(std::span<const Symbol> chunk, std::size_t n) {
    std::vector<Symbol> block(n);
    for (std::size_t i = 0; i < n; ++i) block[i] = chunk[i % chunk.size()];
    return block;
}

} // namespace

Message encrypt_block_message(const OrthogonalSystem& system, const Message& plain,
                              std::uint64_t rounds) {
    check_origin(plain, Origin::plain, "encrypt");
    check_symbols(plain, system.q(), "encrypt");
    const std::size_t n = static_cast<std::size_t>(system.arity());
    std::vector<Symbol> out;
    out.reserve(ceil_div(plain.size(), n) * n);
    for (std::size_t at = 0; at < plain.size(); at += n) {
        const std::size_t len = std::min(n, plain.size() - at);
        const std::span<const Symbol> chunk(plain.symbols.data() + at, len);
        const auto block = (len == n) ? std::vector<Symbol>(chunk.begin(), chunk.end())
                                      : padded_chunk(chunk, n);
        const auto v = encrypt_block_rounds(system, block, rounds);
        out.insert(out.end(), v.begin(), v.end());
    }
    return Message::cipher(std::move(out));
}

Message decrypt_block_message(const OrthogonalSystem& system, const Message& cipher,
                              std::size_t plain_len, std::uint64_t rounds) {
    check_origin(cipher, Origin::cipher, "decrypt");
    check_symbols(cipher, system.q(), "decrypt");
    const std::size_t n = static_cast<std::size_t>(system.arity());
    if (cipher.size() != ceil_div(plain_len, n) * n) {
        throw std::invalid_argument("ciphertext length does not match the declared message length");
    }
    const OrthogonalSystem inverse = inverse_system(system);
    std::vector<Symbol> out;
    out.reserve(plain_len);
    for (std::size_t at = 0; at < cipher.size(); at += n) {
        std::vector<Symbol> state(cipher.symbols.begin() + static_cast<std::ptrdiff_t>(at),
                                  cipher.symbols.begin() + static_cast<std::ptrdiff_t>(at + n));
        for (std::uint64_t r = 0; r < rounds; ++r) state = inverse.apply(state);
        const std::size_t take = std::min(n, plain_len - out.size());
        out.insert(out.end(), state.begin(), state.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return Message::plain(std::move(out));
}

std::vector<Symbol> encrypt_with_leaders(const OrthogonalSystem& system,
                                         std::span<const Symbol> fixed, Symbol plain) {
    if (fixed.size() + 1 != static_cast<std::size_t>(system.arity())) {
        throw std::invalid_argument("leader-fan mode fixes exactly n-1 argument slots");
    }
    std::vector<Symbol> args(fixed.begin(), fixed.end());
    args.push_back(plain);
    return system.apply(args);
}

Symbol decrypt_with_leaders(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                            std::span<const Symbol> block) {
    if (fixed.size() + 1 != static_cast<std::size_t>(system.arity())) {
        throw std::invalid_argument("leader-fan mode fixes exactly n-1 argument slots");
    }
    if (block.size() != static_cast<std::size_t>(system.arity())) {
        throw std::invalid_argument("leader-fan block must have n symbols");
    }
    const auto preimage = inverse_system(system).apply(block);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (preimage[i] != fixed[i]) {
            throw TamperedCiphertext("recovered leader slot " + std::to_string(i + 1) +
                                     " does not match the agreed leaders");
        }
    }
    return preimage.back();
}

Message encrypt_leader_fan(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                           const Message& plain) {
    check_origin(plain, Origin::plain, "encrypt");
    check_symbols(plain, system.q(), "encrypt");
    std::vector<Symbol> out;
    out.reserve(plain.size() * static_cast<std::size_t>(system.arity()));
    for (Symbol u : plain.symbols) {
        const auto block = encrypt_with_leaders(system, fixed, u);
        out.insert(out.end(), block.begin(), block.end());
    }
    return Message::cipher(std::move(out));
}

Message decrypt_leader_fan(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                           const Message& cipher) {
    check_origin(cipher, Origin::cipher, "decrypt");
    check_symbols(cipher, system.q(), "decrypt");
    const std::size_t n = static_cast<std::size_t>(system.arity());
    if (cipher.size() % n != 0) {
        throw std::invalid_argument("leader-fan ciphertext must be a whole number of blocks");
    }
    const OrthogonalSystem inverse = inverse_system(system);
    std::vector<Symbol> out;
    out.reserve(cipher.size() / n);
    for (std::size_t at = 0; at < cipher.size(); at += n) {
        const auto preimage = inverse.apply(
            std::span<const Symbol>(cipher.symbols.data() + at, n));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (preimage[i] != fixed[i]) {
                throw TamperedCiphertext("recovered leader slot " + std::to_string(i + 1) +
                                         " does not match the agreed leaders");
            }
        }
        out.push_back(preimage.back());
    }
    return Message::plain(std::move(out));
}

MixSchedule::MixSchedule(std::vector<int> digits_) : digits(std::move(digits_)) {
    if (digits.empty()) throw std::invalid_argument("schedule needs at least one digit");
    for (int d : digits) {
        if (d < 1) throw std::invalid_argument("schedule digits must be positive");
    }
}

std::vector<MixSegment> mix_segmentation(const MixSchedule& schedule, std::size_t plain_len,
                                         int arity) {
    const std::size_t n = static_cast<std::size_t>(arity);
    std::vector<MixSegment> segments;
    std::size_t consumed = 0;
    for (std::size_t index = 0; consumed < plain_len; ++index) {
        const auto engine = (index % 2 == 0) ? MixEngine::stream : MixEngine::block;
        const auto digit = static_cast<std::size_t>(schedule.digits[index % schedule.digits.size()]);
        const std::size_t take = std::min(digit, plain_len - consumed);
        const std::size_t cipher_len = (engine == MixEngine::stream) ? take : ceil_div(take, n) * n;
        segments.push_back({engine, take, cipher_len});
        consumed += take;
    }
    return segments;
}

MixedResult encrypt_mixed(const QuasigroupKey& key, const LeaderBlock& leaders,
                          const OrthogonalSystem& system, const MixSchedule& schedule,
                          const Message& plain) {
    if (system.arity() != key.arity() || system.q() != key.q()) {
        throw std::invalid_argument("stream key and block system must share arity and alphabet");
    }
    check_origin(plain, Origin::plain, "encrypt");
    check_symbols(plain, key.q(), "encrypt");

    const auto segments = mix_segmentation(schedule, plain.size(), key.arity());
    StreamEncryptor stream(key, leaders);
    std::vector<Symbol> out;
    out.reserve(plain.size());

    std::size_t at = 0;
    for (const auto& segment : segments) {
        const std::span<const Symbol> chunk(plain.symbols.data() + at, segment.plain_len);
        if (segment.engine == MixEngine::stream) {
            for (Symbol u : chunk) out.push_back(stream.push(u));
        } else {
            const auto piece =
                encrypt_block_message(system, Message::plain({chunk.begin(), chunk.end()}));
            out.insert(out.end(), piece.symbols.begin(), piece.symbols.end());
        }
        at += segment.plain_len;
    }
    return MixedResult{Message::cipher(std::move(out)), segments};
}

Message decrypt_mixed(const QuasigroupKey& key, const LeaderBlock& leaders,
                      const OrthogonalSystem& system, const MixSchedule& schedule,
                      const Message& cipher, std::size_t plain_len) {
    if (system.arity() != key.arity() || system.q() != key.q()) {
        throw std::invalid_argument("stream key and block system must share arity and alphabet");
    }
    check_origin(cipher, Origin::cipher, "decrypt");
    check_symbols(cipher, key.q(), "decrypt");

    const auto segments = mix_segmentation(schedule, plain_len, key.arity());
    std::size_t expected = 0;
    for (const auto& segment : segments) expected += segment.cipher_len;
    if (cipher.size() != expected) {
        throw std::invalid_argument("ciphertext length does not match the declared message length");
    }

    StreamDecryptor stream(key, leaders);
    std::vector<Symbol> out;
    out.reserve(plain_len);
    std::size_t at = 0;
    for (const auto& segment : segments) {
        const std::span<const Symbol> chunk(cipher.symbols.data() + at, segment.cipher_len);
        if (segment.engine == MixEngine::stream) {
            for (Symbol v : chunk) out.push_back(stream.push(v));
        } else {
            const auto piece = decrypt_block_message(
                system, Message::cipher({chunk.begin(), chunk.end()}), segment.plain_len);
            out.insert(out.end(), piece.symbols.begin(), piece.symbols.end());
        }
        at += segment.cipher_len;
    }
    return Message::plain(std::move(out));
}

int digits_per_byte(int q) {
    if (q < 2) throw std::invalid_argument("alphabet order must be at least 2");
    int digits = 0;
    long long reach = 1;
    while (reach < 256) {
        reach *= q;
        ++digits;
    }
    return digits;
}

Message vectorize(std::span<const std::uint8_t> bytes, int q) {
    const int d = digits_per_byte(q);
    std::vector<Symbol> out;
    out.reserve(bytes.size() * static_cast<std::size_t>(d));
    for (std::uint8_t byte : bytes) {
        int value = byte;
        for (int i = d - 1; i >= 0; --i) {
            int power = 1;
            for (int j = 0; j < i; ++j) power *= q;
            out.push_back(static_cast<Symbol>(value / power));
            value %= power;
        }
    }
    return Message::plain(std::move(out));
}

std::vector<std::uint8_t> devectorize(const Message& digits, int q) {
    const int d = digits_per_byte(q);
    if (digits.size() % static_cast<std::size_t>(d) != 0) {
        throw std::invalid_argument("digit stream has a trailing partial group");
    }
    std::vector<std::uint8_t> out;
    out.reserve(digits.size() / static_cast<std::size_t>(d));
    for (std::size_t at = 0; at < digits.size(); at += static_cast<std::size_t>(d)) {
        int value = 0;
        for (int i = 0; i < d; ++i) {
            const Symbol digit = digits.symbols[at + static_cast<std::size_t>(i)];
            if (digit >= q) {
                throw std::invalid_argument("digit " + std::to_string(digit) +
                                            " outside base " + std::to_string(q));
            }
            value = value * q + digit;
        }
        if (value > 255) {
            throw std::invalid_argument("digit group decodes to " + std::to_string(value) +
                                        ", not a byte");
        }
        out.push_back(static_cast<std::uint8_t>(value));
    }
    return out;
}

} // namespace qg
