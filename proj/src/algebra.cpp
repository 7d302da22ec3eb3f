#include "qg/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "qg/rng.hpp"

namespace qg {

Alphabet::Alphabet(int order) : q_(order) {
    if (order < 2 || order > 65535) {
        throw std::invalid_argument("alphabet order must be in [2, 65535], got " +
                                    std::to_string(order));
    }
}

Alphabet::Alphabet(int order, std::vector<std::string> tokens) : Alphabet(order) {
    if (tokens.empty()) return;
    if (static_cast<int>(tokens.size()) != order) {
        throw std::invalid_argument("alphabet needs exactly q tokens");
    }
    std::unordered_set<std::string> seen;
    for (const auto& token : tokens) {
        if (token.empty() || !seen.insert(token).second) {
            throw std::invalid_argument("alphabet tokens must be distinct and non-empty");
        }
    }
    tokens_ = std::move(tokens);
}

Symbol Alphabet::code_of(std::string_view token) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (tokens_[i] == token) return static_cast<Symbol>(i);
    }
    throw std::invalid_argument("token '" + std::string(token) + "' is not in the alphabet");
}

std::string Alphabet::display(Symbol code) const {
    if (code < tokens_.size()) return tokens_[code];
    return std::to_string(code);
}

std::size_t table_entry_count(int q, int arity) {
    if (q < 2) throw std::invalid_argument("alphabet order must be at least 2");
    if (arity < 1) throw std::invalid_argument("arity must be positive");
    std::size_t count = 1;
    for (int i = 0; i < arity; ++i) {
        if (count > kMaxTableEntries / static_cast<std::size_t>(q)) {
            throw std::invalid_argument("table of q^n entries exceeds the size cap");
        }
        count *= static_cast<std::size_t>(q);
    }
    return count;
}

OperationTable::OperationTable(int arity, Alphabet alphabet, std::vector<Symbol> values)
    : arity_(arity), alphabet_(std::move(alphabet)), values_(std::move(values)) {
    const std::size_t expected = table_entry_count(alphabet_.q(), arity_);
    if (values_.size() != expected) {
        throw std::invalid_argument("table needs q^n = " + std::to_string(expected) +
                                    " values, got " + std::to_string(values_.size()));
    }
    for (Symbol v : values_) {
        if (v >= alphabet_.q()) {
            throw std::invalid_argument("table value " + std::to_string(v) +
                                        " outside alphabet of order " +
                                        std::to_string(alphabet_.q()));
        }
    }
}

std::size_t OperationTable::rank(std::span<const Symbol> args) const {
    if (args.size() != static_cast<std::size_t>(arity_)) {
        throw std::invalid_argument("expected " + std::to_string(arity_) + " arguments, got " +
                                    std::to_string(args.size()));
    }
    std::size_t r = 0;
    for (Symbol a : args) {
        if (a >= q()) {
            throw std::out_of_range("argument " + std::to_string(a) +
                                    " outside alphabet of order " + std::to_string(q()));
        }
        r = r * static_cast<std::size_t>(q()) + a;
    }
    return r;
}

std::vector<Symbol> OperationTable::tuple_at(std::size_t r) const {
    std::vector<Symbol> tuple(static_cast<std::size_t>(arity_));
    for (int i = arity_ - 1; i >= 0; --i) {
        tuple[static_cast<std::size_t>(i)] = static_cast<Symbol>(r % q());
        r /= static_cast<std::size_t>(q());
    }
    return tuple;
}

Symbol OperationTable::evaluate(std::span<const Symbol> args) const {
    return values_[rank(args)];
}

Symbol OperationTable::operator()(std::initializer_list<Symbol> args) const {
    return evaluate(std::span<const Symbol>(args.begin(), args.size()));
}

std::string QuasigroupViolation::describe(const Alphabet& alphabet) const {
    std::ostringstream out;
    out << "argument slot " << position << " with others fixed to (";
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        out << (i ? " " : "") << alphabet.display(fixed[i]);
    }
    out << "): values " << alphabet.display(first_arg) << " and " << alphabet.display(second_arg)
        << " both give " << alphabet.display(value);
    return out.str();
}

std::optional<QuasigroupViolation> find_quasigroup_violation(const OperationTable& table) {
    const int n = table.arity();
    const int q = table.q();
    std::vector<Symbol> args(static_cast<std::size_t>(n), 0);
    std::vector<Symbol> rest(static_cast<std::size_t>(n - 1), 0);
    std::vector<int> first_with(static_cast<std::size_t>(q));

    for (int slot = 0; slot < n; ++slot) {
        std::fill(rest.begin(), rest.end(), Symbol{0});
        while (true) {
            // Assemble the line: `rest` fills every slot except `slot`.
            for (int i = 0, j = 0; i < n; ++i) {
                if (i != slot) args[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(j++)];
            }
            std::fill(first_with.begin(), first_with.end(), -1);
            for (int x = 0; x < q; ++x) {
                args[static_cast<std::size_t>(slot)] = static_cast<Symbol>(x);
                const Symbol value = table.evaluate(args);
                if (first_with[value] >= 0) {
                    return QuasigroupViolation{slot + 1, rest,
                                               static_cast<Symbol>(first_with[value]),
                                               static_cast<Symbol>(x), value};
                }
                first_with[value] = x;
            }
            // Advance the n-1 fixed digits lexicographically.
            int i = n - 2;
            while (i >= 0 && rest[static_cast<std::size_t>(i)] == q - 1) {
                rest[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++rest[static_cast<std::size_t>(i)];
        }
    }
    return std::nullopt;
}

bool is_quasigroup(const OperationTable& table) {
    return !find_quasigroup_violation(table).has_value();
}

QuasigroupKey::QuasigroupKey(OperationTable table) : table_(std::move(table)) {
    if (table_.arity() < 2) {
        throw std::invalid_argument("quasigroup arity must be at least 2");
    }
    if (auto violation = find_quasigroup_violation(table_)) {
        throw std::invalid_argument("table is not a quasigroup: " +
                                    violation->describe(table_.alphabet()));
    }
}

namespace {

constexpr std::array<std::array<int, 3>, 6> kSigmaImages = {{
    {1, 2, 3}, // identity
    {2, 1, 3}, // s12
    {3, 2, 1}, // s13
    {1, 3, 2}, // s23
    {2, 3, 1}, // s123: 1->2, 2->3, 3->1
    {3, 1, 2}, // s132: 1->3, 3->2, 2->1
}};

constexpr std::array<const char*, 6> kSigmaNames = {"id", "(12)", "(13)", "(23)", "(123)", "(132)"};

Sigma sigma_from_images(const std::array<int, 3>& images) {
    for (std::size_t i = 0; i < kSigmaImages.size(); ++i) {
        if (kSigmaImages[i] == images) return static_cast<Sigma>(i);
    }
    throw std::logic_error("not a permutation of {1,2,3}");
}

} // namespace

std::array<int, 3> sigma_images(Sigma sigma) {
    return kSigmaImages[static_cast<std::size_t>(sigma)];
}

Sigma compose(Sigma a, Sigma b) {
    const auto fa = sigma_images(a);
    const auto fb = sigma_images(b);
    return sigma_from_images({fa[fb[0] - 1], fa[fb[1] - 1], fa[fb[2] - 1]});
}

Sigma sigma_inverse(Sigma sigma) {
    const auto f = sigma_images(sigma);
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[f[i] - 1] = i + 1;
    return sigma_from_images(inv);
}

std::string to_string(Sigma sigma) {
    return kSigmaNames[static_cast<std::size_t>(sigma)];
}

std::optional<Sigma> parse_sigma(std::string_view text) {
    for (std::size_t i = 0; i < kSigmaNames.size(); ++i) {
        if (text == kSigmaNames[i]) return static_cast<Sigma>(i);
    }
    // Bare digit forms: 12, 13, 23, 123, 132.
    for (std::size_t i = 1; i < kSigmaNames.size(); ++i) {
        const std::string_view name = kSigmaNames[i];
        if (text == name.substr(1, name.size() - 2)) return static_cast<Sigma>(i);
    }
    if (text == "identity") return Sigma::identity;
    return std::nullopt;
}

QuasigroupKey binary_parastrophe(const QuasigroupKey& key, Sigma sigma) {
    if (key.arity() != 2) {
        throw std::invalid_argument("parastrophes by S3 label apply to binary quasigroups");
    }
    const int q = key.q();
    const auto images = sigma_images(sigma);
    std::vector<Symbol> values(static_cast<std::size_t>(q) * q);
    std::array<Symbol, 3> triple{};
    for (Symbol x = 0; x < q; ++x) {
        for (Symbol y = 0; y < q; ++y) {
            triple = {x, y, key({x, y})};
            const std::size_t r =
                static_cast<std::size_t>(triple[images[0] - 1]) * q + triple[images[1] - 1];
            values[r] = triple[images[2] - 1];
        }
    }
    return QuasigroupKey(OperationTable(2, key.alphabet(), std::move(values)));
}

QuasigroupKey inverse_op(const QuasigroupKey& key, int position) {
    const int n = key.arity();
    if (position < 1 || position > n) {
        throw std::out_of_range("inverse position must be in 1..n");
    }
    const OperationTable& table = key.table();
    std::vector<Symbol> values(table.size());
    std::vector<Symbol> args(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < table.size(); ++r) {
        args = table.tuple_at(r);
        const Symbol xi = args[static_cast<std::size_t>(position - 1)];
        args[static_cast<std::size_t>(position - 1)] = table.values()[r];
        values[table.rank(args)] = xi;
    }
    return QuasigroupKey(OperationTable(n, key.alphabet(), std::move(values)));
}

bool check_parastrophe_equality(const QuasigroupKey& key, Sigma sigma) {
    if (sigma == Sigma::identity) return true;
    return binary_parastrophe(key, sigma).table() == key.table();
}

bool Translation::is_bijection() const {
    std::vector<bool> seen(map.size(), false);
    for (Symbol v : map) {
        if (v >= map.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<Symbol> Translation::inverse_map() const {
    if (!is_bijection()) throw std::logic_error("translation map is not a bijection");
    std::vector<Symbol> inv(map.size());
    for (std::size_t x = 0; x < map.size(); ++x) inv[map[x]] = static_cast<Symbol>(x);
    return inv;
}

Translation translation_of(const OperationTable& table, std::span<const Symbol> prefix) {
    if (prefix.size() + 1 != static_cast<std::size_t>(table.arity())) {
        throw std::invalid_argument("translation prefix must have n-1 symbols");
    }
    std::vector<Symbol> args(prefix.begin(), prefix.end());
    args.push_back(0);
    Translation t{{prefix.begin(), prefix.end()}, {}};
    t.map.reserve(static_cast<std::size_t>(table.q()));
    for (int x = 0; x < table.q(); ++x) {
        args.back() = static_cast<Symbol>(x);
        t.map.push_back(table.evaluate(args));
    }
    return t;
}

QuasigroupKey random_quasigroup(int q, int arity, std::uint64_t seed) {
    if (arity < 2) throw std::invalid_argument("quasigroup arity must be at least 2");
    const std::size_t count = table_entry_count(q, arity);
    SplitMix64 rng(seed);

    // n argument permutations plus one result permutation over Z_q addition.
    std::vector<std::vector<Symbol>> perms(static_cast<std::size_t>(arity) + 1);
    for (auto& perm : perms) {
        perm.resize(static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) perm[static_cast<std::size_t>(i)] = static_cast<Symbol>(i);
        shuffle(perm, rng);
    }

    std::vector<Symbol> values(count);
    std::vector<Symbol> digits(static_cast<std::size_t>(arity), 0);
    for (std::size_t r = 0; r < count; ++r) {
        int sum = 0;
        for (int i = 0; i < arity; ++i) sum += perms[static_cast<std::size_t>(i)][digits[static_cast<std::size_t>(i)]];
        values[r] = perms.back()[static_cast<std::size_t>(sum % q)];

        for (int i = arity - 1; i >= 0; --i) {
            auto& d = digits[static_cast<std::size_t>(i)];
            if (++d < q) break;
            d = 0;
        }
    }
    return QuasigroupKey(OperationTable(arity, Alphabet(q), std::move(values)));
}

} // namespace qg
