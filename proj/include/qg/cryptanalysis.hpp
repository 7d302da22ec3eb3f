#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qg/algebra.hpp"
#include "qg/cipher.hpp"
#include "qg/orthogonality.hpp"

namespace qg {

/// The device under attack answered in a way no conforming quasigroup
/// cipher could (conflicting table cells, non-bijective lines, ...).
struct OracleConformanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A message-level encryption or decryption device loaded with a hidden
/// key. Every call is counted and transcribed; the key never leaves the
/// concrete implementation.
class Oracle {
public:
    enum class Direction { encrypting, decrypting };

    struct TranscriptEntry {
        std::vector<Symbol> input;
        std::vector<Symbol> output;
    };

    virtual ~Oracle() = default;

    Message query(const Message& input);

    Direction direction() const noexcept { return direction_; }
    std::uint64_t calls() const noexcept { return calls_; }
    std::uint64_t symbols_processed() const noexcept { return symbols_; }
    const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }

protected:
    explicit Oracle(Direction direction) : direction_(direction) {}

private:
    virtual Message run(const Message& input) = 0;

    Direction direction_;
    std::uint64_t calls_ = 0;
    std::uint64_t symbols_ = 0;
    std::vector<TranscriptEntry> transcript_;
};

/// One line per query: direction | input symbols | output symbols.
void write_transcript(const Oracle& oracle, std::ostream& out);

/// The n-ary stream cipher as a device (binary cipher when arity = 2).
class StreamDeviceOracle : public Oracle {
public:
    StreamDeviceOracle(Direction direction, QuasigroupKey key, LeaderBlock leaders);

private:
    Message run(const Message& input) override;

    QuasigroupKey key_;
    LeaderBlock leaders_;
};

/// The orthogonal-system block cipher as a device; messages must be a whole
/// number of blocks.
class BlockDeviceOracle : public Oracle {
public:
    BlockDeviceOracle(Direction direction, OrthogonalSystem system, std::uint64_t rounds = 1);

private:
    Message run(const Message& input) override;

    OrthogonalSystem system_;
    std::uint64_t rounds_;
};

/// What an attack recovered: the hidden operation A, the decryption
/// operation ^(n,n+1)A as tabulated from the device, and the per-attack
/// query accounting. leader_translations stays empty until
/// recover_leader_translations runs.
struct RecoveredKey {
    QuasigroupKey table;          // recovered A
    OperationTable inverse_table; // recovered ^(n,n+1)A
    std::uint64_t query_count;
    std::uint64_t symbol_count;
    std::vector<Translation> leader_translations;
    std::uint64_t translation_query_count = 0;
};

/// De Bruijn sequence B(q, n): length q^n, every n-window of the cyclic
/// sequence appears exactly once. Built by Lyndon-word concatenation.
std::vector<Symbol> de_bruijn_sequence(int q, int n);

/// Chosen-ciphertext key recovery: one crafted ciphertext (a de Bruijn
/// sequence plus n-1 wraparound symbols, q^n + n - 1 symbols total) makes
/// every response position >= n reveal one entry of ^(n,n+1)A; the table of
/// A follows by inverting position n.
RecoveredKey cca_recover(Oracle& oracle, int q, int n);

/// Chosen-plaintext key recovery. The attacker only steers the last
/// argument; the leading n-1 arguments of each revealed entry are prior
/// ciphertext. Every query reuses the same probe prefix (all zeros) so the
/// initial chain state is reproducible, then walks already-learned edges to
/// a state with an unexplored symbol and spends exactly that one symbol:
/// exactly q^n queries, each revealing one new entry of A.
RecoveredKey cpa_recover(Oracle& oracle, int q, int n);

/// Recovers the inverse leader translations T_j^-1 (and hence T_j) from a
/// decrypting device using q messages (q_i,...,q_i) of length n-1; fills
/// recovered.leader_translations with representative prefixes found by the
/// equivalent-leader scan and returns the translations.
std::vector<Translation> recover_leader_translations(Oracle& oracle, RecoveredKey& recovered);

/// All (n-1)-prefixes of the key whose translation map equals `translation`,
/// in lexicographic order. The true leader prefix is indistinguishable from
/// any other member of its class.
std::vector<std::vector<Symbol>> equivalent_leader_prefixes(const QuasigroupKey& key,
                                                            const Translation& translation);

/// Decrypts an intercepted ciphertext with recovered material only:
/// positions < n through the recovered translations, the rest through the
/// recovered ^(n,n+1)A.
Message break_end_to_end(const RecoveredKey& recovered, const Message& intercepted);

/// Single-application block cipher recovery: tabulates a decrypting block
/// device on all q^n blocks, yielding the full inverse system.
OrthogonalSystem recover_inverse_system(Oracle& oracle, int q, int n);

} // namespace qg
