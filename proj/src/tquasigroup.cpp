#include "qg/tquasigroup.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace qg {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

LinearQuasigroupSpec::LinearQuasigroupSpec(int p_, int k_, int m_, int a_)
    : p(p_), k(k_), m(m_), a(a_) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
    if (p > 65535) throw std::invalid_argument("modulus too large for 16-bit symbols");
    if (k <= 0 || k >= p || m <= 0 || m >= p) {
        throw std::invalid_argument("coefficients k, m must be nonzero mod p");
    }
    if (a < 0 || a >= p) throw std::invalid_argument("constant a must be in 0..p-1");
}

LinearQuasigroupSpec LinearQuasigroupSpec::parse(std::string_view text) {
    int parts[4];
    std::size_t begin = 0;
    for (int i = 0; i < 4; ++i) {
        const std::size_t end = (i < 3) ? text.find(':', begin) : text.size();
        if (end == std::string_view::npos) {
            throw std::invalid_argument("expected p:k:m:a, got '" + std::string(text) + "'");
        }
        const auto piece = text.substr(begin, end - begin);
        const auto result = std::from_chars(piece.data(), piece.data() + piece.size(), parts[i]);
        if (result.ec != std::errc{} || result.ptr != piece.data() + piece.size()) {
            throw std::invalid_argument("bad integer in spec '" + std::string(text) + "'");
        }
        begin = end + 1;
    }
    return LinearQuasigroupSpec(parts[0], parts[1], parts[2], parts[3]);
}

std::string LinearQuasigroupSpec::to_string() const {
    return std::to_string(p) + ":" + std::to_string(k) + ":" + std::to_string(m) + ":" +
           std::to_string(a);
}

QuasigroupKey materialize(const LinearQuasigroupSpec& spec) {
    const auto p = static_cast<std::size_t>(spec.p);
    std::vector<Symbol> values(p * p);
    for (std::size_t x = 0; x < p; ++x) {
        const std::size_t row = (static_cast<std::size_t>(spec.k) * x + spec.a) % p;
        for (std::size_t y = 0; y < p; ++y) {
            values[x * p + y] =
                static_cast<Symbol>((row + static_cast<std::size_t>(spec.m) * y) % p);
        }
    }
    return QuasigroupKey(OperationTable(2, Alphabet(spec.p), std::move(values)));
}

bool ParastropheOrthoReport::result(Sigma sigma) const {
    for (std::size_t i = 0; i < kNonIdentitySigmas.size(); ++i) {
        if (kNonIdentitySigmas[i] == sigma) return orthogonal[i];
    }
    throw std::invalid_argument("report covers the five non-identity parastrophes");
}

bool ParastropheOrthoReport::all() const {
    for (bool b : orthogonal) {
        if (!b) return false;
    }
    return true;
}

ParastropheOrthoReport t1_criterion(const LinearQuasigroupSpec& spec) {
    const long long p = spec.p;
    const long long k = spec.k;
    const long long m = spec.m;
    const auto nonzero = [p](long long v) { return ((v % p) + p) % p != 0; };
    return ParastropheOrthoReport{
        OrthoMethod::criterion,
        {
            nonzero(k - m) && nonzero(k + m), // s12
            nonzero(1 + k),                   // s13
            nonzero(1 + m),                   // s23
            nonzero(k + m * m),               // s123
            nonzero(k * k + m),               // s132
        },
    };
}

bool brute_force_ortho(const QuasigroupKey& key, Sigma sigma) {
    if (key.arity() != 2) {
        throw std::invalid_argument("parastrophe orthogonality applies to binary quasigroups");
    }
    const QuasigroupKey para =
        (sigma == Sigma::identity) ? key : binary_parastrophe(key, sigma);
    const std::size_t q = static_cast<std::size_t>(key.q());
    std::vector<bool> seen(q * q, false);
    const auto& a = key.table().values();
    const auto& b = para.table().values();
    for (std::size_t r = 0; r < a.size(); ++r) {
        const std::size_t joint = static_cast<std::size_t>(a[r]) * q + b[r];
        if (seen[joint]) return false;
        seen[joint] = true;
    }
    return true;
}

ParastropheOrthoReport brute_force_report(const QuasigroupKey& key) {
    ParastropheOrthoReport report{OrthoMethod::brute_force, {}};
    for (std::size_t i = 0; i < kNonIdentitySigmas.size(); ++i) {
        report.orthogonal[i] = brute_force_ortho(key, kNonIdentitySigmas[i]);
    }
    return report;
}

bool th2_cancellation_check(const QuasigroupKey& key, Sigma sigma) {
    if (key.arity() != 2) {
        throw std::invalid_argument("cancellation laws apply to binary quasigroups");
    }
    if (sigma == Sigma::identity) {
        throw std::invalid_argument("no cancellation law is attached to the identity");
    }
    const int q = key.q();
    const OperationTable& a = key.table();
    // s12 needs left division x\z.
    const OperationTable ld = (sigma == Sigma::s12)
                                  ? binary_parastrophe(key, Sigma::s23).table()
                                  : a;
    const auto dot = [&a](Symbol x, Symbol y) { return a({x, y}); };

    std::vector<int> seen_x(static_cast<std::size_t>(q));
    for (Symbol z = 0; z < q; ++z) {
        std::fill(seen_x.begin(), seen_x.end(), -1);
        for (Symbol x = 0; x < q; ++x) {
            Symbol w;
            switch (sigma) {
                case Sigma::s12: w = dot(ld({x, z}), x); break;
                case Sigma::s13: w = dot(dot(z, x), x); break;
                case Sigma::s23: w = dot(x, dot(x, z)); break;
                case Sigma::s123: w = dot(x, dot(z, x)); break;
                case Sigma::s132: w = dot(dot(x, z), x); break;
                default: return false; // unreachable
            }
            if (seen_x[w] >= 0) return false;
            seen_x[w] = x;
        }
    }
    return true;
}

} // namespace qg
