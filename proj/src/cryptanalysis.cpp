#include "qg/cryptanalysis.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <string>

namespace qg {

Message Oracle::query(const Message& input) {
    Message output = run(input);
    ++calls_;
    symbols_ += input.size();
    transcript_.push_back({input.symbols, output.symbols});
    return output;
}

void write_transcript(const Oracle& oracle, std::ostream& out) {
    const char* word = oracle.direction() == Oracle::Direction::encrypting ? "encrypt" : "decrypt";
    for (const auto& entry : oracle.transcript()) {
        out << word << " |";
        for (Symbol s : entry.input) out << ' ' << s;
        out << " |";
        for (Symbol s : entry.output) out << ' ' << s;
        out << '\n';
    }
}

StreamDeviceOracle::StreamDeviceOracle(Direction direction, QuasigroupKey key, LeaderBlock leaders)
    : Oracle(direction), key_(std::move(key)), leaders_(std::move(leaders)) {}

Message StreamDeviceOracle::run(const Message& input) {
    return direction() == Direction::encrypting ? encrypt_nary(key_, leaders_, input)
                                                : decrypt_nary(key_, leaders_, input);
}

BlockDeviceOracle::BlockDeviceOracle(Direction direction, OrthogonalSystem system,
                                     std::uint64_t rounds)
    : Oracle(direction), system_(std::move(system)), rounds_(rounds) {}

Message BlockDeviceOracle::run(const Message& input) {
    const std::size_t n = static_cast<std::size_t>(system_.arity());
    if (input.size() % n != 0) {
        throw std::invalid_argument("block device processes whole n-symbol blocks");
    }
    if (direction() == Direction::encrypting) {
        std::vector<Symbol> out;
        out.reserve(input.size());
        for (std::size_t at = 0; at < input.size(); at += n) {
            const auto v = encrypt_block_rounds(
                system_, std::span<const Symbol>(input.symbols.data() + at, n), rounds_);
            out.insert(out.end(), v.begin(), v.end());
        }
        return Message::cipher(std::move(out));
    }
    const OrthogonalSystem inverse = inverse_system(system_);
    std::vector<Symbol> out;
    out.reserve(input.size());
    for (std::size_t at = 0; at < input.size(); at += n) {
        std::vector<Symbol> state(input.symbols.begin() + static_cast<std::ptrdiff_t>(at),
                                  input.symbols.begin() + static_cast<std::ptrdiff_t>(at + n));
        for (std::uint64_t r = 0; r < rounds_; ++r) state = inverse.apply(state);
        out.insert(out.end(), state.begin(), state.end());
    }
    return Message::plain(std::move(out));
}

std::vector<Symbol> de_bruijn_sequence(int q, int n) {
    if (q < 2 || n < 1) throw std::invalid_argument("de Bruijn sequence needs q >= 2, n >= 1");
    std::vector<Symbol> seq;
    std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
    const auto db = [&](auto&& self, int t, int p) -> void {
        if (t > n) {
            if (n % p == 0) {
                for (int i = 1; i <= p; ++i) seq.push_back(static_cast<Symbol>(a[static_cast<std::size_t>(i)]));
            }
            return;
        }
        a[static_cast<std::size_t>(t)] = a[static_cast<std::size_t>(t - p)];
        self(self, t + 1, p);
        for (int j = a[static_cast<std::size_t>(t - p)] + 1; j < q; ++j) {
            a[static_cast<std::size_t>(t)] = j;
            self(self, t + 1, t);
        }
    };
    db(db, 1, 1);
    return seq;
}

namespace {

struct CellRecorder {
    explicit CellRecorder(std::size_t count) : cells(count, -1) {}

    void record(std::size_t rank, Symbol value) {
        if (cells[rank] >= 0) {
            if (cells[rank] != static_cast<int>(value)) {
                throw OracleConformanceError(
                    "device returned conflicting values for one table cell");
            }
            return;
        }
        cells[rank] = value;
        ++filled;
    }

    std::vector<Symbol> take(const char* what) const {
        std::vector<Symbol> out(cells.size());
        for (std::size_t r = 0; r < cells.size(); ++r) {
            if (cells[r] < 0) {
                throw std::logic_error(std::string(what) + ": coverage hole at rank " +
                                       std::to_string(r));
            }
            out[r] = static_cast<Symbol>(cells[r]);
        }
        return out;
    }

    std::vector<int> cells;
    std::size_t filled = 0;
};

QuasigroupKey validate_recovered(OperationTable table, const char* what) {
    if (auto violation = find_quasigroup_violation(table)) {
        throw OracleConformanceError(std::string(what) + ": recovered table is not a quasigroup (" +
                                     violation->describe(table.alphabet()) + ")");
    }
    return QuasigroupKey(std::move(table));
}

/// Rebuilds the tabulated cells as an OperationTable, reporting symbols the
/// device emitted outside the alphabet as a conformance failure.
OperationTable table_from_cells(int n, int q, const CellRecorder& cells, const char* what) {
    try {
        return OperationTable(n, Alphabet(q), cells.take(what));
    } catch (const std::invalid_argument& e) {
        throw OracleConformanceError(std::string(what) + ": " + e.what());
    }
}

} // namespace

RecoveredKey cca_recover(Oracle& oracle, int q, int n) {
    if (oracle.direction() != Oracle::Direction::decrypting) {
        throw std::invalid_argument("chosen-ciphertext recovery needs a decrypting device");
    }
    const std::size_t count = table_entry_count(q, n);
    const std::uint64_t calls_before = oracle.calls();
    const std::uint64_t symbols_before = oracle.symbols_processed();

    // One crafted ciphertext: a de Bruijn sequence plus its first n-1
    // symbols, so the sliding n-windows visit every argument tuple of
    // ^(n,n+1)A exactly once. q^n + n - 1 symbols total.
    std::vector<Symbol> crafted = de_bruijn_sequence(q, n);
    const std::vector<Symbol> wraparound(crafted.begin(), crafted.begin() + (n - 1));
    crafted.insert(crafted.end(), wraparound.begin(), wraparound.end());
    const Message response = oracle.query(Message::cipher(crafted));
    if (response.size() != crafted.size()) {
        throw OracleConformanceError("device changed the message length");
    }

    const OperationTable shape(n, Alphabet(q), std::vector<Symbol>(count, 0));
    CellRecorder inverse_cells(count);
    for (std::size_t i = 0; i + n <= crafted.size(); ++i) {
        const std::span<const Symbol> window(crafted.data() + i, static_cast<std::size_t>(n));
        inverse_cells.record(shape.rank(window), response.symbols[i + static_cast<std::size_t>(n) - 1]);
    }

    QuasigroupKey inverse_key = validate_recovered(
        table_from_cells(n, q, inverse_cells, "chosen-ciphertext recovery"),
        "chosen-ciphertext recovery");
    QuasigroupKey recovered_a = inverse_op(inverse_key, n);
    return RecoveredKey{std::move(recovered_a), inverse_key.table(),
                        oracle.calls() - calls_before,
                        oracle.symbols_processed() - symbols_before,
                        {},
                        0};
}

RecoveredKey cpa_recover(Oracle& oracle, int q, int n) {
    if (oracle.direction() != Oracle::Direction::encrypting) {
        throw std::invalid_argument("chosen-plaintext recovery needs an encrypting device");
    }
    const std::size_t count = table_entry_count(q, n);
    const std::size_t state_count = count / static_cast<std::size_t>(q); // q^(n-1)
    const std::uint64_t calls_before = oracle.calls();
    const std::uint64_t symbols_before = oracle.symbols_processed();

    CellRecorder cells(count);
    std::vector<Symbol> leader_outputs; // v_1..v_{n-1} under the all-zero probe prefix
    std::optional<std::size_t> start_state;

    // Chain state = the last n-1 cipher symbols; appending a new one drops
    // the oldest: next = (state mod q^(n-2)) * q + value.
    const std::size_t shift_mod = state_count / static_cast<std::size_t>(q) > 0
                                      ? state_count / static_cast<std::size_t>(q)
                                      : 1;
    const auto shifted = [&](std::size_t state, Symbol value) {
        return (state % shift_mod) * static_cast<std::size_t>(q) + value;
    };

    while (cells.filled < count) {
        std::vector<Symbol> plaintext(static_cast<std::size_t>(n - 1), 0);
        if (!start_state) {
            plaintext.push_back(0);
        } else {
            // BFS over already-learned edges from the reproducible start
            // state to the nearest state with an unexplored last argument.
            std::vector<int> prev_state(state_count, -1);
            std::vector<Symbol> prev_symbol(state_count, 0);
            std::vector<bool> visited(state_count, false);
            std::deque<std::size_t> frontier{*start_state};
            visited[*start_state] = true;
            std::optional<std::size_t> target;
            while (!frontier.empty() && !target) {
                const std::size_t state = frontier.front();
                frontier.pop_front();
                for (Symbol u = 0; u < q; ++u) {
                    if (cells.cells[state * static_cast<std::size_t>(q) + u] < 0) {
                        target = state;
                        break;
                    }
                }
                if (target) break;
                for (Symbol u = 0; u < q; ++u) {
                    const int value = cells.cells[state * static_cast<std::size_t>(q) + u];
                    const std::size_t next = shifted(state, static_cast<Symbol>(value));
                    if (!visited[next]) {
                        visited[next] = true;
                        prev_state[next] = static_cast<int>(state);
                        prev_symbol[next] = u;
                        frontier.push_back(next);
                    }
                }
            }
            if (!target) {
                throw OracleConformanceError(
                    "chosen-plaintext recovery: no reachable unexplored state, device is not a "
                    "quasigroup cipher");
            }
            std::vector<Symbol> path;
            for (std::size_t s = *target; s != *start_state; s = static_cast<std::size_t>(prev_state[s])) {
                path.push_back(prev_symbol[s]);
            }
            std::reverse(path.begin(), path.end());
            plaintext.insert(plaintext.end(), path.begin(), path.end());
            Symbol unexplored = 0;
            while (cells.cells[*target * static_cast<std::size_t>(q) + unexplored] >= 0) ++unexplored;
            plaintext.push_back(unexplored);
        }

        const Message response = oracle.query(Message::plain(plaintext));
        if (response.size() != plaintext.size()) {
            throw OracleConformanceError("device changed the message length");
        }
        const auto& v = response.symbols;
        for (Symbol s : v) {
            if (s >= q) {
                throw OracleConformanceError("device emitted a symbol outside the alphabet");
            }
        }

        if (leader_outputs.empty()) {
            leader_outputs.assign(v.begin(), v.begin() + (n - 1));
            std::size_t s = 0;
            for (Symbol x : leader_outputs) s = s * static_cast<std::size_t>(q) + x;
            start_state = s;
        } else {
            for (int j = 0; j < n - 1; ++j) {
                if (v[static_cast<std::size_t>(j)] != leader_outputs[static_cast<std::size_t>(j)]) {
                    throw OracleConformanceError("leader positions drifted between queries");
                }
            }
        }

        // Every position t >= n reveals A(v_{t-n+1}..v_{t-1}, u_t); the
        // navigation positions re-confirm known cells, the last one is new.
        for (std::size_t t = static_cast<std::size_t>(n) - 1; t < v.size(); ++t) {
            std::size_t window = 0;
            for (std::size_t i = t - static_cast<std::size_t>(n) + 1; i < t; ++i) {
                window = window * static_cast<std::size_t>(q) + v[i];
            }
            cells.record(window * static_cast<std::size_t>(q) + plaintext[t], v[t]);
        }
    }

    QuasigroupKey key = validate_recovered(
        table_from_cells(n, q, cells, "chosen-plaintext recovery"), "chosen-plaintext recovery");
    OperationTable inverse_table = inverse_op(key, n).table();
    return RecoveredKey{std::move(key), std::move(inverse_table),
                        oracle.calls() - calls_before,
                        oracle.symbols_processed() - symbols_before,
                        {},
                        0};
}

std::vector<Translation> recover_leader_translations(Oracle& oracle, RecoveredKey& recovered) {
    if (oracle.direction() != Oracle::Direction::decrypting) {
        throw std::invalid_argument("leader-translation recovery needs a decrypting device");
    }
    const int n = recovered.table.arity();
    const int q = recovered.table.q();
    const std::uint64_t calls_before = oracle.calls();

    // q messages (q_i,...,q_i) of length n-1 tabulate every T_j^-1 at once.
    std::vector<std::vector<Symbol>> inverse_maps(static_cast<std::size_t>(n - 1),
                                                  std::vector<Symbol>(static_cast<std::size_t>(q)));
    for (Symbol i = 0; i < q; ++i) {
        const Message response =
            oracle.query(Message::cipher(std::vector<Symbol>(static_cast<std::size_t>(n - 1), i)));
        if (response.size() != static_cast<std::size_t>(n - 1)) {
            throw OracleConformanceError("device changed the message length");
        }
        for (int j = 0; j < n - 1; ++j) {
            inverse_maps[static_cast<std::size_t>(j)][i] = response.symbols[static_cast<std::size_t>(j)];
        }
    }

    std::vector<Translation> translations;
    translations.reserve(static_cast<std::size_t>(n - 1));
    for (auto& inverse : inverse_maps) {
        Translation inverted{{}, std::move(inverse)};
        if (!inverted.is_bijection()) {
            throw OracleConformanceError("leader translation is not a permutation");
        }
        Translation forward{{}, inverted.inverse_map()};
        const auto representatives = equivalent_leader_prefixes(recovered.table, forward);
        if (representatives.empty()) {
            throw OracleConformanceError(
                "no leader prefix of the recovered key produces the observed translation");
        }
        forward.prefix = representatives.front();
        translations.push_back(std::move(forward));
    }

    recovered.translation_query_count = oracle.calls() - calls_before;
    recovered.leader_translations = translations;
    return translations;
}

std::vector<std::vector<Symbol>> equivalent_leader_prefixes(const QuasigroupKey& key,
                                                            const Translation& translation) {
    const int n = key.arity();
    const int q = key.q();
    std::vector<std::vector<Symbol>> matches;
    std::vector<Symbol> prefix(static_cast<std::size_t>(n - 1), 0);
    while (true) {
        if (translation_of(key.table(), prefix).map == translation.map) {
            matches.push_back(prefix);
        }
        int i = n - 2;
        while (i >= 0 && prefix[static_cast<std::size_t>(i)] == q - 1) {
            prefix[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++prefix[static_cast<std::size_t>(i)];
    }
    return matches;
}

Message break_end_to_end(const RecoveredKey& recovered, const Message& intercepted) {
    if (intercepted.origin != Origin::cipher) {
        throw std::invalid_argument("break expects an intercepted ciphertext");
    }
    const int n = recovered.table.arity();
    if (recovered.leader_translations.size() != static_cast<std::size_t>(n - 1)) {
        throw std::logic_error("run recover_leader_translations before breaking a full message");
    }

    const auto& v = intercepted.symbols;
    std::vector<Symbol> out;
    out.reserve(v.size());
    std::vector<std::vector<Symbol>> inverses;
    inverses.reserve(recovered.leader_translations.size());
    for (const auto& t : recovered.leader_translations) inverses.push_back(t.inverse_map());

    for (std::size_t t = 0; t < v.size(); ++t) {
        if (t < static_cast<std::size_t>(n - 1)) {
            out.push_back(inverses[t][v[t]]);
        } else {
            const std::span<const Symbol> window(v.data() + t - static_cast<std::size_t>(n) + 1,
                                                 static_cast<std::size_t>(n));
            out.push_back(recovered.inverse_table.evaluate(window));
        }
    }
    return Message::plain(std::move(out));
}

OrthogonalSystem recover_inverse_system(Oracle& oracle, int q, int n) {
    if (oracle.direction() != Oracle::Direction::decrypting) {
        throw std::invalid_argument("block recovery needs a decrypting device");
    }
    const std::size_t count = table_entry_count(q, n);
    const OperationTable shape(n, Alphabet(q), std::vector<Symbol>(count, 0));

    std::vector<std::size_t> image(count);
    for (std::size_t r = 0; r < count; ++r) {
        const Message response = oracle.query(Message::cipher(shape.tuple_at(r)));
        if (response.size() != static_cast<std::size_t>(n)) {
            throw OracleConformanceError("device changed the block length");
        }
        try {
            image[r] = shape.rank(response.symbols);
        } catch (const std::out_of_range&) {
            throw OracleConformanceError("device emitted a symbol outside the alphabet");
        }
    }
    try {
        return system_from_permutation(TuplePermutation(Alphabet(q), n, std::move(image)));
    } catch (const std::invalid_argument& e) {
        throw OracleConformanceError(std::string("device decryption is not a bijection: ") +
                                     e.what());
    }
}

} // namespace qg
