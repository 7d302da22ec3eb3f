#pragma once

// Reference tables shared by the unit and acceptance suites. Layout for
// n-ary tables: x1 selects the block, x2 the row, x3 the column.

#include <vector>

#include "qg/algebra.hpp"
#include "qg/orthogonality.hpp"

namespace fixtures {

inline qg::Alphabet abc_alphabet() { return qg::Alphabet(3, {"a", "b", "c"}); }

/// Order-3 quasigroup x*y = x+y+1 mod 3 over {a,b,c}; the classic stream
/// cipher demonstration key.
inline qg::QuasigroupKey order3_key() {
    return qg::QuasigroupKey(qg::OperationTable(2, abc_alphabet(),
                                                {1, 2, 0,
                                                 2, 0, 1,
                                                 0, 1, 2}));
}

/// Left division (s23 parastrophe) of order3_key.
inline std::vector<qg::Symbol> order3_left_division_values() {
    return {2, 0, 1,
            1, 2, 0,
            0, 1, 2};
}

/// Order-4 ternary quasigroup that is not an isotope of a 3-ary group.
/// Its translations T(0,1,-) and T(2,3,-) coincide.
inline qg::QuasigroupKey ternary4_key() {
    return qg::QuasigroupKey(qg::OperationTable(3, qg::Alphabet(4), {
        // x1 = 0
        0, 1, 2, 3,  1, 2, 3, 0,  2, 3, 0, 1,  3, 0, 1, 2,
        // x1 = 1
        1, 0, 3, 2,  0, 1, 2, 3,  3, 2, 1, 0,  2, 3, 0, 1,
        // x1 = 2
        2, 3, 0, 1,  3, 0, 1, 2,  0, 1, 2, 3,  1, 2, 3, 0,
        // x1 = 3
        3, 2, 1, 0,  2, 3, 0, 1,  1, 0, 3, 2,  0, 1, 2, 3,
    }));
}

/// Second member of the order-4 ternary orthogonal triple; a groupoid, not
/// a quasigroup.
inline qg::OperationTable ternary4_groupoid_b() {
    return qg::OperationTable(3, qg::Alphabet(4), {
        3, 0, 1, 3,  0, 2, 3, 0,  1, 2, 1, 3,  1, 1, 2, 2,
        2, 1, 1, 0,  2, 3, 3, 0,  0, 2, 1, 3,  0, 0, 3, 1,
        1, 2, 0, 0,  2, 0, 3, 1,  0, 2, 3, 2,  3, 2, 1, 1,
        3, 3, 2, 2,  0, 1, 2, 1,  0, 2, 0, 3,  3, 1, 0, 3,
    });
}

/// Third member of the same triple.
inline qg::OperationTable ternary4_groupoid_c() {
    return qg::OperationTable(3, qg::Alphabet(4), {
        3, 1, 2, 0,  2, 1, 1, 2,  0, 1, 0, 1,  3, 1, 2, 3,
        1, 2, 1, 3,  1, 2, 3, 1,  0, 2, 2, 0,  1, 3, 1, 1,
        3, 3, 0, 0,  2, 1, 0, 1,  3, 3, 2, 0,  3, 0, 2, 3,
        2, 1, 0, 0,  2, 0, 2, 3,  3, 3, 2, 0,  2, 0, 0, 3,
    });
}

/// The full order-4 ternary orthogonal system (quasigroup + two groupoids).
inline qg::OrthogonalSystem ternary4_system() {
    return qg::OrthogonalSystem(
        {ternary4_key().table(), ternary4_groupoid_b(), ternary4_groupoid_c()});
}

/// x+y mod q.
inline qg::QuasigroupKey zq_addition(int q) {
    std::vector<qg::Symbol> values(static_cast<std::size_t>(q) * q);
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            values[static_cast<std::size_t>(x) * q + y] = static_cast<qg::Symbol>((x + y) % q);
        }
    }
    return qg::QuasigroupKey(qg::OperationTable(2, qg::Alphabet(q), std::move(values)));
}

/// x-y mod q (s23-self-parastrophic for q = 3).
inline qg::QuasigroupKey zq_subtraction(int q) {
    std::vector<qg::Symbol> values(static_cast<std::size_t>(q) * q);
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            values[static_cast<std::size_t>(x) * q + y] =
                static_cast<qg::Symbol>(((x - y) % q + q) % q);
        }
    }
    return qg::QuasigroupKey(qg::OperationTable(2, qg::Alphabet(q), std::move(values)));
}

/// The n coordinate projections f_i(x1..xn) = x_i as an orthogonal system.
inline qg::OrthogonalSystem projection_system(int q, int n) {
    return qg::system_from_permutation(qg::TuplePermutation::identity(qg::Alphabet(q), n));
}

} // namespace fixtures
