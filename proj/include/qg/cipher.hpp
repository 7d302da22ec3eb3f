#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qg/algebra.hpp"
#include "qg/orthogonality.hpp"
#include "qg/rng.hpp"

namespace qg {

enum class Origin { plain, cipher };

/// A sequence of alphabet symbols, tagged with which side of the cipher it
/// lives on so plumbing mistakes surface early.
struct Message {
    std::vector<Symbol> symbols;
    Origin origin = Origin::plain;

    static Message plain(std::vector<Symbol> symbols) {
        return Message{std::move(symbols), Origin::plain};
    }
    static Message cipher(std::vector<Symbol> symbols) {
        return Message{std::move(symbols), Origin::cipher};
    }

    std::size_t size() const noexcept { return symbols.size(); }
    bool empty() const noexcept { return symbols.empty(); }

    friend bool operator==(const Message& a, const Message& b) noexcept {
        return a.origin == b.origin && a.symbols == b.symbols;
    }
};

/// The (n-1)^2 leader symbols of the n-ary stream cipher, consumed as n-1
/// prefixes of length n-1: prefix j = leaders[(j-1)(n-1) .. j(n-1)-1].
/// For n = 2 this is the single leader of the binary cipher.
class LeaderBlock {
public:
    LeaderBlock(int arity, std::vector<Symbol> leaders);

    static LeaderBlock random(int arity, const Alphabet& alphabet, SplitMix64& rng);

    int arity() const noexcept { return arity_; }
    const std::vector<Symbol>& leaders() const noexcept { return leaders_; }
    /// 1-based j in 1..n-1.
    std::span<const Symbol> prefix(int j) const;

private:
    int arity_;
    std::vector<Symbol> leaders_;
};

/// Symbol-at-a-time chaining encryptor:
///   v_j = A(prefix_j, u_j)            for j <= n-1,
///   v_t = A(v_{t-n+1}..v_{t-1}, u_t)  for t >= n.
/// The chain value is explicit state so a message can be fed across several
/// calls (the mixed mode interleaves other engines between segments).
class StreamEncryptor {
public:
    StreamEncryptor(const QuasigroupKey& key, LeaderBlock leaders);
    Symbol push(Symbol plain);

private:
    const QuasigroupKey& key_;
    LeaderBlock leaders_;
    std::vector<Symbol> window_; // last min(n-1, t) cipher symbols
    std::size_t position_ = 0;
};

/// Inverse chain: u_t = ^(n,n+1)A(window, v_t); the window is rebuilt from
/// the ciphertext itself, so positions >= n never need the leaders.
class StreamDecryptor {
public:
    StreamDecryptor(const QuasigroupKey& key, LeaderBlock leaders);
    Symbol push(Symbol cipher);

private:
    QuasigroupKey inverse_; // ^(n,n+1)A
    LeaderBlock leaders_;
    std::vector<Symbol> window_;
    std::size_t position_ = 0;
};

/// Binary stream cipher: v_1 = A(l, u_1), v_i = A(v_{i-1}, u_i).
Message encrypt_binary(const QuasigroupKey& key, Symbol leader, const Message& plain);
Message decrypt_binary(const QuasigroupKey& key, Symbol leader, const Message& cipher);

/// n-ary stream cipher with an (n-1)^2 leader block; degenerates to the
/// binary cipher at n = 2.
Message encrypt_nary(const QuasigroupKey& key, const LeaderBlock& leaders, const Message& plain);
Message decrypt_nary(const QuasigroupKey& key, const LeaderBlock& leaders, const Message& cipher);

/// One block through the orthogonal system: v_i = f_i(u_1..u_n).
std::vector<Symbol> encrypt_block(const OrthogonalSystem& system, std::span<const Symbol> block);
/// Solves the n-equation system via the inverse system.
std::vector<Symbol> decrypt_block(const OrthogonalSystem& system, std::span<const Symbol> block);

std::vector<Symbol> encrypt_block_rounds(const OrthogonalSystem& system,
                                         std::span<const Symbol> block, std::uint64_t rounds);
std::vector<Symbol> decrypt_block_rounds(const OrthogonalSystem& system,
                                         std::span<const Symbol> block, std::uint64_t rounds);

/// Whole-message block mode. A final short block of r < n symbols is padded
/// by cyclically repeating those r symbols; the true length travels in the
/// ciphertext header, so decryption needs plain_len.
Message encrypt_block_message(const OrthogonalSystem& system, const Message& plain,
                              std::uint64_t rounds = 1);
Message decrypt_block_message(const OrthogonalSystem& system, const Message& cipher,
                              std::size_t plain_len, std::uint64_t rounds = 1);

/// Decryption recovered a block whose fixed coordinates disagree with the
/// agreed leaders: the ciphertext was not produced under them.
struct TamperedCiphertext : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Leader-fan mode: the first n-1 arguments are pinned to fixed leaders and
/// one plaintext symbol fans out to n cipher symbols.
std::vector<Symbol> encrypt_with_leaders(const OrthogonalSystem& system,
                                         std::span<const Symbol> fixed, Symbol plain);
/// Inverts one fan block; throws TamperedCiphertext on leader mismatch.
Symbol decrypt_with_leaders(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                            std::span<const Symbol> block);

Message encrypt_leader_fan(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                           const Message& plain);
Message decrypt_leader_fan(const OrthogonalSystem& system, std::span<const Symbol> fixed,
                           const Message& cipher);

/// Alternating-engine schedule: segment i processes digits[i mod size]
/// plaintext symbols, engines strictly alternating starting with the n-ary
/// stream engine. Digits come from the key owner (e.g. pasted digits of an
/// irrational number).
struct MixSchedule {
    explicit MixSchedule(std::vector<int> digits);
    std::vector<int> digits;
};

enum class MixEngine { stream, block };

struct MixSegment {
    MixEngine engine;
    std::size_t plain_len;
    std::size_t cipher_len;

    friend bool operator==(const MixSegment&, const MixSegment&) noexcept = default;
};

/// The segmentation both sides derive from (schedule, plaintext length):
/// stream segments map 1:1, block segments to n*ceil(len/n) symbols.
std::vector<MixSegment> mix_segmentation(const MixSchedule& schedule, std::size_t plain_len,
                                         int arity);

struct MixedResult {
    Message ciphertext;
    std::vector<MixSegment> trace;
};

/// Mixed mode: the stream engine keeps its chain across its own segments;
/// block segments see plaintext only and never touch the stream chain.
MixedResult encrypt_mixed(const QuasigroupKey& key, const LeaderBlock& leaders,
                          const OrthogonalSystem& system, const MixSchedule& schedule,
                          const Message& plain);
Message decrypt_mixed(const QuasigroupKey& key, const LeaderBlock& leaders,
                      const OrthogonalSystem& system, const MixSchedule& schedule,
                      const Message& cipher, std::size_t plain_len);

/// Digits per byte: the smallest d with q^d >= 256.
int digits_per_byte(int q);

/// Byte stream <-> base-q digit stream, most significant digit first.
/// devectorize rejects trailing partial groups, digits >= q, and groups
/// whose value exceeds 255.
Message vectorize(std::span<const std::uint8_t> bytes, int q);
std::vector<std::uint8_t> devectorize(const Message& digits, int q);

} // namespace qg
