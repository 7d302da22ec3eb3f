// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Each criterion pins exact expected values or exhaustive/randomized
// properties, with wall-clock budgets where the contract sets one.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qg/algebra.hpp"
#include "qg/cipher.hpp"
#include "qg/cryptanalysis.hpp"
#include "qg/orthogonality.hpp"
#include "qg/rng.hpp"
#include "qg/tquasigroup.hpp"

using namespace qg;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

Message random_plain(int q, std::size_t len, SplitMix64& rng) {
    std::vector<Symbol> symbols(len);
    for (auto& s : symbols) s = static_cast<Symbol>(rng.next_below(static_cast<std::uint64_t>(q)));
    return Message::plain(std::move(symbols));
}

// 1. Stream-cipher trace reproduction, symbol-exact, under 1 ms.
void criterion1(Check& c) {
    const auto key = fixtures::order3_key();
    const Message plain = Message::plain({1, 1, 2, 0, 0, 2, 1, 0}); // b b c a a c b a

    const auto start = std::chrono::steady_clock::now();
    const Message cipher = encrypt_binary(key, 0, plain);
    const Message back = decrypt_binary(key, 0, cipher);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    c.expect(cipher.symbols == std::vector<Symbol>{2, 1, 1, 2, 0, 0, 2, 0},
             "ciphertext differs from c b b c a a c a");
    c.expect(back == plain, "decryption did not return the plaintext");
    c.expect(ms < 1.0, "round trip took " + std::to_string(ms) + " ms (budget 1 ms)");
}

// 2. s23 parastrophe equals the printed left-division table entry-for-entry.
void criterion2(Check& c) {
    const auto left = binary_parastrophe(fixtures::order3_key(), Sigma::s23);
    c.expect(left.table().values() == fixtures::order3_left_division_values(),
             "left-division table mismatch");
}

// 3. Ternary key fidelity: two fixed entries, equal translations, and the
// equivalent-leader class {(0,1),(2,3)}.
void criterion3(Check& c) {
    const auto key = fixtures::ternary4_key();
    c.expect(key({0, 1, 2}) == 3, "A(0,1,2) != 3");
    c.expect(key({2, 3, 2}) == 3, "A(2,3,2) != 3");

    const std::vector<Symbol> p01{0, 1}, p23{2, 3};
    const auto t01 = translation_of(key.table(), p01);
    const auto t23 = translation_of(key.table(), p23);
    c.expect(t01.map == t23.map, "translations of (0,1) and (2,3) differ");

    const auto cls = equivalent_leader_prefixes(key, t01);
    c.expect(cls == std::vector<std::vector<Symbol>>{{0, 1}, {2, 3}},
             "equivalent-leader scan missed a prefix");
}

// 4. Key recovery is exact for 100 seeded instances at every (q,n), and the
// end-to-end break reproduces intercepted plaintexts.
void criterion4(Check& c) {
    SplitMix64 rng(0xACCE57);
    for (int n : {2, 3}) {
        for (int q : {3, 4, 5}) {
            for (int instance = 0; instance < 100 && c.ok; ++instance) {
                const auto key = random_quasigroup(q, n, rng.next());
                const auto leaders = LeaderBlock::random(n, key.alphabet(), rng);

                StreamDeviceOracle dec(Oracle::Direction::decrypting, key, leaders);
                auto via_cca = cca_recover(dec, q, n);
                c.expect(via_cca.table == key, "cca table mismatch at q=" + std::to_string(q) +
                                                   " n=" + std::to_string(n));

                StreamDeviceOracle enc(Oracle::Direction::encrypting, key, leaders);
                const auto via_cpa = cpa_recover(enc, q, n);
                c.expect(via_cpa.table == key, "cpa table mismatch at q=" + std::to_string(q) +
                                                   " n=" + std::to_string(n));

                recover_leader_translations(dec, via_cca);
                const auto plain = random_plain(q, 50, rng);
                const auto intercepted = encrypt_nary(key, leaders, plain);
                c.expect(break_end_to_end(via_cca, intercepted) == plain,
                         "end-to-end break mismatch at q=" + std::to_string(q) +
                             " n=" + std::to_string(n));
            }
        }
    }
}

// 5. Criterion verdict equals brute-force verdict for every small field,
// coefficient pair, constant, and parastrophe; the worked key flips one.
void criterion5(Check& c) {
    for (int p : {3, 5, 7}) {
        for (int k = 1; k < p; ++k) {
            for (int m = 1; m < p; ++m) {
                for (int a : {0, 1}) {
                    const LinearQuasigroupSpec spec(p, k, m, a);
                    if (!(t1_criterion(spec) == brute_force_report(materialize(spec)))) {
                        c.expect(false, "mismatch at " + spec.to_string());
                        return;
                    }
                }
            }
        }
    }
    const auto flipped = t1_criterion(LinearQuasigroupSpec(7, 2, 3, 0));
    int falses = 0;
    for (bool b : flipped.orthogonal) falses += !b;
    c.expect(falses == 1 && !flipped.result(Sigma::s132),
             "7:2:3 should flip exactly the k^2+m verdict");
}

// 6. Cancellation-law checks equal brute force on 200 random quasigroups.
void criterion6(Check& c) {
    SplitMix64 rng(0x742);
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        const int q = 3 + static_cast<int>(rng.next_below(4));
        const auto key = random_quasigroup(q, 2, rng.next());
        for (Sigma sigma : kNonIdentitySigmas) {
            c.expect(th2_cancellation_check(key, sigma) == brute_force_ortho(key, sigma),
                     "cancellation mismatch at order " + std::to_string(q) + ", sigma " +
                         to_string(sigma));
        }
    }
}

// 7. The (q^n)! correspondence at desk scale: every permutation of Q^n
// splits into an orthogonal system and round trips identically.
void criterion7(Check& c) {
    c.expect(count_orthogonal_systems(2, 2) == 24, "2x2 census is not 24");

    std::vector<std::size_t> image(4);
    std::iota(image.begin(), image.end(), std::size_t{0});
    do {
        const TuplePermutation perm(Alphabet(2), 2, image);
        const auto sys = system_from_permutation(perm);
        c.expect(is_orthogonal_system(sys.tables()), "2x2 system failed orthogonality");
        c.expect(permutation_from_system(sys) == perm, "2x2 round trip broke");
    } while (std::next_permutation(image.begin(), image.end()) && c.ok);

    c.expect(count_orthogonal_systems(2, 3) == 40320, "2^3 census is not 8!");
    image.resize(8);
    std::iota(image.begin(), image.end(), std::size_t{0});
    do {
        const TuplePermutation perm(Alphabet(2), 3, image);
        const auto sys = system_from_permutation(perm);
        c.expect(is_orthogonal_system(sys.tables()), "2^3 system failed orthogonality");
        c.expect(permutation_from_system(sys) == perm, "2^3 round trip broke");
    } while (std::next_permutation(image.begin(), image.end()) && c.ok);
}

// 8. The order-4 ternary triple: orthogonal, invertible on all 64 tuples,
// and block encryption of (0,0,0) equals the tables' first entries.
void criterion8(Check& c) {
    const auto sys = fixtures::ternary4_system();
    c.expect(is_orthogonal_system(sys.tables()), "triple failed orthogonality");

    const auto inv = inverse_system(sys);
    for (std::size_t r = 0; r < 64; ++r) {
        const auto args = sys.tables()[0].tuple_at(r);
        c.expect(inv.apply(sys.apply(args)) == args, "inverse system broke at a tuple");
    }

    const std::vector<Symbol> first{sys.tables()[0]({0, 0, 0}), sys.tables()[1]({0, 0, 0}),
                                    sys.tables()[2]({0, 0, 0})};
    c.expect(encrypt_block(sys, std::vector<Symbol>{0, 0, 0}) == first,
             "block image of (0,0,0) is not the tables' first entries");
    c.expect(first == std::vector<Symbol>{0, 3, 3}, "first entries changed");
}

// 9. decrypt . encrypt = identity in every engine and mode: 1000 randomized
// cases per engine plus every message of length <= 4 at q=3, n=2.
void criterion9(Check& c) {
    SplitMix64 rng(0x909);

    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 3 + static_cast<int>(rng.next_below(3));
        const auto key = random_quasigroup(q, 2, rng.next());
        const Symbol leader = static_cast<Symbol>(rng.next_below(q));
        const auto plain = random_plain(q, rng.next_below(40), rng);
        c.expect(decrypt_binary(key, leader, encrypt_binary(key, leader, plain)) == plain,
                 "binary round trip failed");
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 3 + static_cast<int>(rng.next_below(3));
        const auto key = random_quasigroup(q, 3, rng.next());
        const auto leaders = LeaderBlock::random(3, key.alphabet(), rng);
        const auto plain = random_plain(q, rng.next_below(40), rng);
        c.expect(decrypt_nary(key, leaders, encrypt_nary(key, leaders, plain)) == plain,
                 "n-ary round trip failed");
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 2 + static_cast<int>(rng.next_below(3));
        const auto sys =
            system_from_permutation(TuplePermutation::random(Alphabet(q), 3, rng.next()));
        const std::uint64_t rounds = 1 + rng.next_below(3);
        const auto plain = random_plain(q, rng.next_below(30), rng);
        const auto cipher = encrypt_block_message(sys, plain, rounds);
        c.expect(decrypt_block_message(sys, cipher, plain.size(), rounds) == plain,
                 "block round trip failed");
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 2 + static_cast<int>(rng.next_below(3));
        const auto sys =
            system_from_permutation(TuplePermutation::random(Alphabet(q), 3, rng.next()));
        std::vector<Symbol> fixed{static_cast<Symbol>(rng.next_below(q)),
                                  static_cast<Symbol>(rng.next_below(q))};
        const auto plain = random_plain(q, rng.next_below(20), rng);
        c.expect(decrypt_leader_fan(sys, fixed, encrypt_leader_fan(sys, fixed, plain)) == plain,
                 "leader-fan round trip failed");
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 3 + static_cast<int>(rng.next_below(2));
        const auto key = random_quasigroup(q, 3, rng.next());
        const auto leaders = LeaderBlock::random(3, key.alphabet(), rng);
        const auto sys = system_from_permutation(
            TuplePermutation::random(key.alphabet(), 3, rng.next()));
        std::vector<int> digits;
        for (std::size_t d = 0; d < 1 + rng.next_below(3); ++d) {
            digits.push_back(1 + static_cast<int>(rng.next_below(6)));
        }
        const MixSchedule schedule(digits);
        const auto plain = random_plain(q, rng.next_below(40), rng);
        const auto mixed = encrypt_mixed(key, leaders, sys, schedule, plain);
        c.expect(decrypt_mixed(key, leaders, sys, schedule, mixed.ciphertext, plain.size()) ==
                     plain,
                 "mixed round trip failed");
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int q = 2 + static_cast<int>(rng.next_below(4));
        const auto key = random_quasigroup(q, 2, rng.next());
        const Symbol leader = static_cast<Symbol>(rng.next_below(q));
        std::vector<std::uint8_t> bytes(rng.next_below(64));
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next());
        const auto cipher = encrypt_binary(key, leader, vectorize(bytes, q));
        c.expect(devectorize(decrypt_binary(key, leader, cipher), q) == bytes,
                 "vectorized round trip failed");
    }

    // Exhaustive short messages at q=3, n=2.
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto key = random_quasigroup(3, 2, seed);
        for (Symbol leader = 0; leader < 3; ++leader) {
            for (std::size_t len = 0; len <= 4 && c.ok; ++len) {
                std::size_t total = 1;
                for (std::size_t i = 0; i < len; ++i) total *= 3;
                for (std::size_t m = 0; m < total; ++m) {
                    std::vector<Symbol> symbols(len);
                    std::size_t v = m;
                    for (std::size_t i = 0; i < len; ++i) {
                        symbols[i] = static_cast<Symbol>(v % 3);
                        v /= 3;
                    }
                    const Message plain = Message::plain(symbols);
                    c.expect(
                        decrypt_binary(key, leader, encrypt_binary(key, leader, plain)) == plain,
                        "exhaustive short-message round trip failed");
                }
            }
        }
    }
}

struct Criterion {
    int id;
    const char* label;
    std::function<void(Check&)> run;
    double budget_ms; // 0 = no budget
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked stream trace, symbol-exact, < 1 ms", criterion1, 0},
        {2, "left-division parastrophe table reproduction", criterion2, 0},
        {3, "ternary key fidelity and equivalent leaders", criterion3, 0},
        {4, "exact key recovery, 100 instances per (q,n), plus full breaks", criterion4, 60000},
        {5, "linear-key criterion == brute force, exhaustive small fields", criterion5, 10000},
        {6, "cancellation laws == brute force, 200 random keys", criterion6, 0},
        {7, "permutation census: 24 and 8! systems with round trips", criterion7, 30000},
        {8, "order-4 triple: orthogonal, invertible, pinned block image", criterion8, 0},
        {9, "round-trip identity for every engine and mode", criterion9, 0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        criterion.run(check);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (criterion.budget_ms > 0 && ms > criterion.budget_ms && check.ok) {
            check.ok = false;
            check.detail = "exceeded " + std::to_string(criterion.budget_ms) + " ms budget";
        }
        std::printf("[%s] criterion %d: %s (%.1f ms)%s%s\n", check.ok ? "PASS" : "FAIL",
                    criterion.id, criterion.label, ms, check.ok ? "" : " -- ",
                    check.detail.c_str());
        failures += !check.ok;
    }
    return failures;
}
