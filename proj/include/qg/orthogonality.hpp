#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qg/algebra.hpp"

namespace qg {

/// A permutation of Q^n, stored on tuple ranks (same lexicographic rank
/// convention as OperationTable).
struct TuplePermutation {
    TuplePermutation(Alphabet alphabet, int arity, std::vector<std::size_t> image);

    static TuplePermutation identity(Alphabet alphabet, int arity);
    static TuplePermutation random(Alphabet alphabet, int arity, std::uint64_t seed);

    Alphabet alphabet;
    int arity;
    std::vector<std::size_t> image; // image[r] = rank of the image tuple

    TuplePermutation inverse() const;
    /// Multiplicative order (lcm of cycle lengths).
    std::uint64_t order() const;

    friend bool operator==(const TuplePermutation& a, const TuplePermutation& b) noexcept {
        return a.alphabet == b.alphabet && a.arity == b.arity && a.image == b.image;
    }
};

/// Two argument tuples with the same joint image under (f1,...,fn).
struct JointCollision {
    std::vector<Symbol> first;
    std::vector<Symbol> second;
};

/// Checks that exactly n arity-n tables over one alphabet have an injective
/// joint map on Q^n. Shape mismatches throw std::invalid_argument.
std::optional<JointCollision> find_joint_collision(std::span<const OperationTable> tables);
bool is_orthogonal_system(std::span<const OperationTable> tables);

/// k-orthogonality of k tables of arity n (2 <= k <= n): every target
/// k-tuple must have exactly q^(n-k) preimages. Counted by full enumeration.
bool is_k_orthogonal(std::span<const OperationTable> tables);

/// n arity-n tables whose joint map is a bijection of Q^n; equivalently a
/// permutation of Q^n split into coordinates.
class OrthogonalSystem {
public:
    /// Throws std::invalid_argument with the collision witness if not orthogonal.
    explicit OrthogonalSystem(std::vector<OperationTable> tables);

    const std::vector<OperationTable>& tables() const noexcept { return tables_; }
    int arity() const noexcept { return tables_.front().arity(); }
    int q() const noexcept { return tables_.front().q(); }
    const Alphabet& alphabet() const noexcept { return tables_.front().alphabet(); }

    /// The joint map (x1..xn) -> (f1(x),...,fn(x)).
    std::vector<Symbol> apply(std::span<const Symbol> args) const;

    friend bool operator==(const OrthogonalSystem& a, const OrthogonalSystem& b) noexcept {
        return a.tables_ == b.tables_;
    }

private:
    std::vector<OperationTable> tables_;
};

/// Coordinate split of a permutation of Q^n: table i at tuple t is
/// coordinate i of perm(t). Inverse of permutation_from_system.
OrthogonalSystem system_from_permutation(const TuplePermutation& perm);
TuplePermutation permutation_from_system(const OrthogonalSystem& system);

/// The system whose joint map undoes this one: inverse(sys)(sys(x)) = x.
OrthogonalSystem inverse_system(const OrthogonalSystem& system);

/// (q^n)! as a checked census. q^n <= 8: every permutation of Q^n is
/// enumerated and verified to split into an orthogonal system. q^n <= 20:
/// the factorial is returned after verifying 1000 seeded random
/// permutations the same way. Larger sizes throw std::domain_error (the
/// count would overflow 64 bits).
std::uint64_t count_orthogonal_systems(int q, int arity);

} // namespace qg
