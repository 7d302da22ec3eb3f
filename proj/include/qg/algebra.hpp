#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qg {

/// Symbols are small non-negative integers 0..q-1. 16 bits cover every
/// alphabet this toolkit targets (q up to 65535; the prime-field keys use
/// q = 257).
using Symbol = std::uint16_t;

/// The carrier set {0..q-1}, optionally decorated with display tokens
/// (e.g. a->0, b->1, c->2) for text-mode messages.
class Alphabet {
public:
    explicit Alphabet(int order);
    Alphabet(int order, std::vector<std::string> tokens);

    int q() const noexcept { return q_; }
    bool has_tokens() const noexcept { return !tokens_.empty(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    /// Code of a display token; throws std::invalid_argument if unknown.
    Symbol code_of(std::string_view token) const;
    /// Display form of a code: its token if any, else the decimal digits.
    std::string display(Symbol code) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
        return a.q_ == b.q_;
    }

private:
    int q_;
    std::vector<std::string> tokens_; // empty, or q distinct tokens
};

/// An n-ary operation A : Q^n -> Q stored as q^n values in lexicographic
/// argument order with x1 the most significant digit, so
/// values[rank(x1..xn)] = A(x1,...,xn).
class OperationTable {
public:
    OperationTable(int arity, Alphabet alphabet, std::vector<Symbol> values);

    int arity() const noexcept { return arity_; }
    int q() const noexcept { return alphabet_.q(); }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Symbol>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); } // q^arity

    /// Lexicographic rank of an argument tuple; validates length and range.
    std::size_t rank(std::span<const Symbol> args) const;
    /// Inverse of rank().
    std::vector<Symbol> tuple_at(std::size_t r) const;

    Symbol evaluate(std::span<const Symbol> args) const;
    Symbol operator()(std::initializer_list<Symbol> args) const;

    /// Tables are equal as operations: same arity, order, and values.
    /// Display tokens are presentation and do not participate.
    friend bool operator==(const OperationTable& a, const OperationTable& b) noexcept {
        return a.arity_ == b.arity_ && a.q() == b.q() && a.values_ == b.values_;
    }

private:
    int arity_;
    Alphabet alphabet_;
    std::vector<Symbol> values_;
};

/// Largest q^n this toolkit will materialize as a table.
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

/// q^n with range checks against kMaxTableEntries.
std::size_t table_entry_count(int q, int arity);

/// Witness that a table is not a quasigroup: two values of argument slot
/// `position` (1-based) that produce the same result when the other slots
/// are fixed to `fixed`.
struct QuasigroupViolation {
    int position;
    std::vector<Symbol> fixed;
    Symbol first_arg;
    Symbol second_arg;
    Symbol value;

    std::string describe(const Alphabet& alphabet) const;
};

/// Scans every argument slot: fixing the other n-1 arguments, the map in
/// the free slot must be a permutation of the alphabet. Returns the first
/// violation found, in slot-major lexicographic order.
std::optional<QuasigroupViolation> find_quasigroup_violation(const OperationTable& table);
bool is_quasigroup(const OperationTable& table);

/// An OperationTable validated to be an n-ary quasigroup: fixing any n of
/// the n+1 entries of A(x1..xn) = x_{n+1} determines the remaining one.
class QuasigroupKey {
public:
    /// Throws std::invalid_argument (with the witness) if the table fails.
    explicit QuasigroupKey(OperationTable table);

    const OperationTable& table() const noexcept { return table_; }
    int arity() const noexcept { return table_.arity(); }
    int q() const noexcept { return table_.q(); }
    const Alphabet& alphabet() const noexcept { return table_.alphabet(); }

    Symbol apply(std::span<const Symbol> args) const { return table_.evaluate(args); }
    Symbol operator()(std::initializer_list<Symbol> args) const { return table_(args); }

    friend bool operator==(const QuasigroupKey& a, const QuasigroupKey& b) noexcept {
        return a.table_ == b.table_;
    }

private:
    OperationTable table_;
};

/// Elements of S3 labelling the parastrophes of a binary quasigroup.
/// The sigma-parastrophe is defined on argument/result roles:
///   ^sigma A(x_{sigma(1)}, x_{sigma(2)}) = x_{sigma(3)}  whenever A(x1,x2) = x3,
/// so s23 is left division (\), s13 is right division (/), s12 the transpose.
enum class Sigma { identity, s12, s13, s23, s123, s132 };

inline constexpr std::array<Sigma, 5> kNonIdentitySigmas = {
    Sigma::s12, Sigma::s13, Sigma::s23, Sigma::s123, Sigma::s132};

/// Images (sigma(1), sigma(2), sigma(3)), 1-based.
std::array<int, 3> sigma_images(Sigma sigma);
/// Function composition: parastrophe(b, parastrophe(a, A)) == parastrophe(compose(a, b), A).
Sigma compose(Sigma a, Sigma b);
Sigma sigma_inverse(Sigma sigma);
std::string to_string(Sigma sigma);
std::optional<Sigma> parse_sigma(std::string_view text);

/// The sigma-parastrophe of a binary quasigroup. Always a quasigroup again.
QuasigroupKey binary_parastrophe(const QuasigroupKey& key, Sigma sigma);

/// The i-th inverse operation ^(i,n+1)A, 1-based i in 1..n:
///   ^(i,n+1)A(y1..yn) is the unique w with A(y1..y_{i-1}, w, y_{i+1}..yn) = y_i.
/// Involutive per position; for arity 2 and i = 2 it equals the s23 parastrophe.
QuasigroupKey inverse_op(const QuasigroupKey& key, int position);

/// True iff ^sigma A equals A tablewise (sigma = identity is trivially true).
bool check_parastrophe_equality(const QuasigroupKey& key, Sigma sigma);

/// The unary map x -> A(prefix, x) obtained by fixing all but the last
/// argument. A permutation whenever the table is a quasigroup.
struct Translation {
    std::vector<Symbol> prefix;
    std::vector<Symbol> map; // map[x] = A(prefix, x)

    bool is_bijection() const;
    /// Inverse map; requires is_bijection().
    std::vector<Symbol> inverse_map() const;
};

Translation translation_of(const OperationTable& table, std::span<const Symbol> prefix);

/// Seeded n-ary quasigroup of order q: the n-ary group x1+...+xn mod q
/// composed with n+1 independent seeded permutations (one per argument slot,
/// one on the result). Isotopy keeps the quasigroup property at any size;
/// the sample is not uniform over all quasigroups.
QuasigroupKey random_quasigroup(int q, int arity, std::uint64_t seed);

} // namespace qg
