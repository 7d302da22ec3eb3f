#pragma once

#include <array>
#include <string>
#include <string_view>

#include "qg/algebra.hpp"

namespace qg {

/// Linear quasigroup x*y = k*x + m*y + a over the prime field Z_p.
/// k and m are nonzero mod p, so both coordinate maps are automorphisms.
struct LinearQuasigroupSpec {
    LinearQuasigroupSpec(int p, int k, int m, int a);

    /// Parses the CLI form "p:k:m:a".
    static LinearQuasigroupSpec parse(std::string_view text);
    std::string to_string() const;

    int p;
    int k;
    int m;
    int a;
};

bool is_prime(int n);

/// The full p x p table of x*y = k*x + m*y + a; always a quasigroup.
QuasigroupKey materialize(const LinearQuasigroupSpec& spec);

enum class OrthoMethod { criterion, brute_force };

/// One verdict per non-identity parastrophe, in kNonIdentitySigmas order
/// (s12, s13, s23, s123, s132).
struct ParastropheOrthoReport {
    OrthoMethod method;
    std::array<bool, 5> orthogonal;

    bool result(Sigma sigma) const;
    bool all() const;

    friend bool operator==(const ParastropheOrthoReport& a,
                           const ParastropheOrthoReport& b) noexcept {
        return a.orthogonal == b.orthogonal;
    }
};

/// Arithmetic criterion for A _|_ ^sigma A over Z_p: a scalar is a
/// permutation of Z_p iff it is nonzero, so the five verdicts reduce to
///   s12:  k-m != 0 and k+m != 0
///   s13:  1+k  != 0
///   s23:  1+m  != 0
///   s123: k+m^2 != 0
///   s132: k^2+m != 0   (all mod p).
ParastropheOrthoReport t1_criterion(const LinearQuasigroupSpec& spec);

/// Oracle: builds ^sigma A and scans (x,y) -> (A(x,y), ^sigma A(x,y)) for
/// injectivity over Q^2.
bool brute_force_ortho(const QuasigroupKey& key, Sigma sigma);
ParastropheOrthoReport brute_force_report(const QuasigroupKey& key);

/// Cancellation-law equivalent of each verdict, evaluated in operation
/// notation by exhaustive scan over (x,y,z):
///   s12:  (x\z)*x = (y\z)*y  => x=y      (\ = s23 parastrophe)
///   s13:  (z*x)*x = (z*y)*y  => x=y
///   s23:  x*(x*z) = y*(y*z)  => x=y
///   s123: x*(z*x) = y*(z*y)  => x=y
///   s132: (x*z)*x = (y*z)*y  => x=y
bool th2_cancellation_check(const QuasigroupKey& key, Sigma sigma);

} // namespace qg
