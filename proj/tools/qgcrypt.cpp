// qgcrypt: key generation, encryption, attack demonstrations, and property
// reports for table-based quasigroup ciphers. All randomness flows through
// --seed; identical invocations produce identical bytes.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qg/algebra.hpp"
#include "qg/cipher.hpp"
#include "qg/cryptanalysis.hpp"
#include "qg/io.hpp"
#include "qg/orthogonality.hpp"
#include "qg/rng.hpp"
#include "qg/tquasigroup.hpp"

namespace {

using namespace qg;

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_table_grid(std::ostream& out, const OperationTable& table, const Alphabet& alphabet) {
    const int q = table.q();
    const int n = table.arity();
    if (n > 3) {
        io::write_table(out, table);
        return;
    }
    const auto cell = [&](Symbol s) { return alphabet.display(s); };
    const int prefixes = (n == 3) ? q : 1;
    for (int p = 0; p < prefixes; ++p) {
        if (n == 3) out << "[" << cell(static_cast<Symbol>(p)) << " | . .]\n";
        out << "    ";
        for (int y = 0; y < q; ++y) out << ' ' << cell(static_cast<Symbol>(y));
        out << "\n";
        for (int x = 0; x < q; ++x) {
            out << "  " << cell(static_cast<Symbol>(x)) << " |";
            for (int y = 0; y < q; ++y) {
                std::vector<Symbol> args;
                if (n == 3) args.push_back(static_cast<Symbol>(p));
                args.push_back(static_cast<Symbol>(x));
                args.push_back(static_cast<Symbol>(y));
                out << ' ' << cell(table.evaluate(args));
            }
            out << "\n";
        }
    }
}

struct LoadedKey {
    io::KeyFile file;
    std::optional<QuasigroupKey> stream_key;
    std::optional<OrthogonalSystem> system;
};

/// Interprets the key file shape: 1 block = stream key, n blocks of arity n
/// = orthogonal system, n+1 blocks = stream key + system.
LoadedKey interpret_key(io::KeyFile file) {
    LoadedKey loaded{std::move(file), std::nullopt, std::nullopt};
    const auto& tables = loaded.file.tables;
    const int n = tables.front().arity();
    if (tables.size() == 1) {
        loaded.stream_key = QuasigroupKey(tables.front());
    } else if (tables.size() == static_cast<std::size_t>(n)) {
        loaded.system = OrthogonalSystem(tables);
    } else if (tables.size() == static_cast<std::size_t>(n) + 1) {
        loaded.stream_key = QuasigroupKey(tables.front());
        loaded.system = OrthogonalSystem({tables.begin() + 1, tables.end()});
    } else {
        throw std::runtime_error("key file must hold 1, n, or n+1 tables");
    }
    return loaded;
}

LeaderBlock resolve_leaders(const LoadedKey& key, int arity, const std::string& override_list,
                            const Alphabet& alphabet, std::uint64_t seed, std::size_t count) {
    std::vector<Symbol> leaders;
    if (!override_list.empty()) {
        leaders = io::parse_symbol_list(override_list, alphabet);
    } else if (!key.file.leaders.empty()) {
        leaders = key.file.leaders;
    } else {
        SplitMix64 rng(seed ^ 0x1eadb10cULL);
        for (std::size_t i = 0; i < count; ++i) {
            leaders.push_back(static_cast<Symbol>(rng.next_below(alphabet.q())));
        }
        std::cerr << "note: no leaders given; derived " << count << " from --seed\n";
    }
    if (leaders.size() != count) {
        throw std::runtime_error("engine needs " + std::to_string(count) + " leader symbols, got " +
                                 std::to_string(leaders.size()));
    }
    for (Symbol l : leaders) {
        if (l >= alphabet.q()) throw std::runtime_error("leader symbol out of range");
    }
    return LeaderBlock(arity, std::move(leaders));
}

std::vector<Symbol> fan_leaders(const LoadedKey& key, const OrthogonalSystem& sys,
                                const std::string& override_list, const Alphabet& alphabet) {
    std::vector<Symbol> leaders = override_list.empty()
                                      ? key.file.leaders
                                      : io::parse_symbol_list(override_list, alphabet);
    if (leaders.size() != static_cast<std::size_t>(sys.arity() - 1)) {
        throw std::runtime_error("leader-fan engine needs n-1 leader symbols");
    }
    return leaders;
}

std::vector<int> resolve_schedule(const LoadedKey& key, const std::string& override_list) {
    std::vector<int> digits;
    if (!override_list.empty()) {
        std::string spaced = override_list;
        for (char& c : spaced) {
            if (c == ',') c = ' ';
        }
        std::istringstream in(spaced);
        int d = 0;
        while (in >> d) digits.push_back(d);
    } else {
        digits = key.file.schedule;
    }
    if (digits.empty()) throw std::runtime_error("mixed engine needs a schedule");
    return digits;
}

int cmd_keygen(const std::string& kind, int q, int n, std::uint64_t seed, const std::string& out,
               const std::string& spec_text, const std::string& leader_list,
               std::optional<std::uint64_t> rounds) {
    io::KeyFile file;
    if (kind == "quasigroup") {
        const auto key = random_quasigroup(q, n, seed);
        file.tables.push_back(key.table());
        SplitMix64 rng(seed ^ 0x1eadb10cULL);
        file.leaders = leader_list.empty()
                           ? LeaderBlock::random(n, key.alphabet(), rng).leaders()
                           : io::parse_symbol_list(leader_list, key.alphabet());
    } else if (kind == "orthosystem") {
        const auto sys = system_from_permutation(TuplePermutation::random(Alphabet(q), n, seed));
        file.tables = sys.tables();
        if (!leader_list.empty()) {
            file.leaders = io::parse_symbol_list(leader_list, sys.alphabet());
        }
        file.rounds = rounds;
    } else if (kind == "tquasigroup") {
        const auto spec = LinearQuasigroupSpec::parse(spec_text);
        const auto key = materialize(spec);
        file.tables.push_back(key.table());
        SplitMix64 rng(seed ^ 0x1eadb10cULL);
        file.leaders = leader_list.empty()
                           ? std::vector<Symbol>{static_cast<Symbol>(rng.next_below(spec.p))}
                           : io::parse_symbol_list(leader_list, key.alphabet());

        const auto report = t1_criterion(spec);
        const auto observed = brute_force_report(key);
        std::cout << "parastrophe orthogonality of " << spec.to_string() << ":\n";
        for (std::size_t i = 0; i < kNonIdentitySigmas.size(); ++i) {
            std::cout << "  A _|_ ^" << to_string(kNonIdentitySigmas[i])
                      << "A: " << (report.orthogonal[i] ? "yes" : "no")
                      << (report.orthogonal[i] == observed.orthogonal[i]
                              ? " (brute force agrees)"
                              : " (BRUTE FORCE DISAGREES)")
                      << "\n";
        }
        if (!(report == observed)) throw std::runtime_error("criterion/oracle mismatch");
    } else {
        throw std::runtime_error("kind must be quasigroup, orthosystem, or tquasigroup");
    }
    io::save_key_file(out, file);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_encrypt(bool decrypting, const std::string& key_path, std::string engine,
                const std::string& in_path, const std::string& out_path,
                const std::string& alphabet_path, bool vectorized,
                const std::string& leader_list, std::optional<std::uint64_t> rounds_flag,
                const std::string& schedule_list, std::uint64_t seed) {
    const LoadedKey key = interpret_key(io::load_key_file(key_path));
    const int q = key.file.tables.front().q();
    const int n = key.file.tables.front().arity();
    const Alphabet numeric(q);

    std::optional<Alphabet> alphabet;
    if (!alphabet_path.empty()) {
        if (vectorized) throw std::runtime_error("--alphabet and --vectorize conflict");
        alphabet = io::load_alphabet(alphabet_path);
        if (alphabet->q() != q) throw std::runtime_error("alphabet order does not match the key");
    }

    // Gather the input symbols. Ciphertext arrives either as text-mode
    // symbols (with an alphabet) or as a QC1 file, whose header also names
    // the engine.
    std::vector<Symbol> input;
    std::size_t message_len = 0;
    if (decrypting && !alphabet) {
        const auto header = io::load_ciphertext(in_path);
        if (header.q != q || header.arity != n) {
            throw std::runtime_error("ciphertext header does not match the key");
        }
        if (engine.empty()) engine = header.engine;
        if (engine != header.engine) {
            throw std::runtime_error("--engine disagrees with the ciphertext header");
        }
        input = header.symbols;
        message_len = header.message_len;
    } else if (decrypting) {
        std::istringstream in(read_text(in_path));
        input = io::parse_symbols_text(in, *alphabet);
        message_len = input.size();
    } else if (vectorized) {
        input = vectorize(read_bytes(in_path), q).symbols;
        message_len = input.size();
    } else {
        std::istringstream in(read_text(in_path));
        input = io::parse_symbols_text(in, alphabet ? *alphabet : numeric);
        message_len = input.size();
    }

    if (engine.empty()) throw std::runtime_error("--engine is required here");
    if (alphabet && engine != "binary" && engine != "nary") {
        throw std::runtime_error("text mode supports the binary and nary engines");
    }

    // Run the engine.
    std::vector<Symbol> output;
    if (engine == "binary" || engine == "nary") {
        if (!key.stream_key) throw std::runtime_error("key file holds no stream key");
        if (engine == "binary" && key.stream_key->arity() != 2) {
            throw std::runtime_error("binary engine needs an arity-2 key");
        }
        if (decrypting && input.size() != message_len) {
            throw std::runtime_error("truncated ciphertext: header promises " +
                                     std::to_string(message_len) + " symbols, file holds " +
                                     std::to_string(input.size()));
        }
        const auto leaders =
            resolve_leaders(key, key.stream_key->arity(), leader_list,
                            key.stream_key->alphabet(), seed,
                            static_cast<std::size_t>(key.stream_key->arity() - 1) *
                                (key.stream_key->arity() - 1));
        output = decrypting
                     ? decrypt_nary(*key.stream_key, leaders, Message::cipher(input)).symbols
                     : encrypt_nary(*key.stream_key, leaders, Message::plain(input)).symbols;
    } else if (engine == "block") {
        if (!key.system) throw std::runtime_error("key file holds no orthogonal system");
        const std::uint64_t rounds = rounds_flag ? *rounds_flag : key.file.rounds.value_or(1);
        output = decrypting
                     ? decrypt_block_message(*key.system, Message::cipher(input), message_len,
                                             rounds)
                           .symbols
                     : encrypt_block_message(*key.system, Message::plain(input), rounds).symbols;
    } else if (engine == "leaderfan") {
        if (!key.system) throw std::runtime_error("key file holds no orthogonal system");
        if (decrypting && input.size() != message_len * static_cast<std::size_t>(n)) {
            throw std::runtime_error("truncated ciphertext: fan mode needs n symbols per "
                                     "plaintext symbol");
        }
        const auto fixed = fan_leaders(key, *key.system, leader_list, key.system->alphabet());
        output = decrypting
                     ? decrypt_leader_fan(*key.system, fixed, Message::cipher(input)).symbols
                     : encrypt_leader_fan(*key.system, fixed, Message::plain(input)).symbols;
    } else if (engine == "mixed") {
        if (!key.stream_key || !key.system) {
            throw std::runtime_error("mixed engine needs an n+1-table key file");
        }
        const auto leaders =
            resolve_leaders(key, n, leader_list, key.stream_key->alphabet(), seed,
                            static_cast<std::size_t>(n - 1) * (n - 1));
        const MixSchedule schedule(resolve_schedule(key, schedule_list));
        output = decrypting
                     ? decrypt_mixed(*key.stream_key, leaders, *key.system, schedule,
                                     Message::cipher(input), message_len)
                           .symbols
                     : encrypt_mixed(*key.stream_key, leaders, *key.system, schedule,
                                     Message::plain(input))
                           .ciphertext.symbols;
    } else {
        throw std::runtime_error("engine must be binary, nary, block, leaderfan, or mixed");
    }

    // Emit.
    if (decrypting) {
        if (vectorized) {
            write_bytes(out_path, devectorize(Message::plain(output), q));
        } else if (alphabet) {
            write_text(out_path, io::format_symbols_text(output, *alphabet) + "\n");
        } else {
            write_text(out_path, io::format_symbols_text(output, numeric) + "\n");
        }
    } else {
        if (alphabet) {
            write_text(out_path, io::format_symbols_text(output, *alphabet) + "\n");
        } else {
            io::save_ciphertext(out_path,
                                io::CiphertextFile{engine, n, q, message_len, output});
        }
    }
    return 0;
}

void print_recovered(const RecoveredKey& recovered) {
    std::cout << "recovered decryption table ^(" << recovered.table.arity() << ","
              << recovered.table.arity() + 1 << ")A:\n";
    print_table_grid(std::cout, recovered.inverse_table, recovered.inverse_table.alphabet());
    std::cout << "recovered operation A:\n";
    print_table_grid(std::cout, recovered.table.table(), recovered.table.alphabet());
    std::cout << "oracle calls: " << recovered.query_count
              << ", symbols: " << recovered.symbol_count << "\n";
}

int cmd_attack(const std::string& mode, const std::string& key_path,
               const std::string& leader_list, std::uint64_t seed, std::size_t message_len,
               const std::string& transcript_path) {
    const LoadedKey key = interpret_key(io::load_key_file(key_path));
    if (!key.stream_key) throw std::runtime_error("attack targets a stream key file");
    const QuasigroupKey& hidden = *key.stream_key;
    const int q = hidden.q();
    const int n = hidden.arity();
    const auto leaders =
        resolve_leaders(key, n, leader_list, hidden.alphabet(), seed,
                        static_cast<std::size_t>(n - 1) * (n - 1));

    bool pass = false;
    std::optional<StreamDeviceOracle> oracle;
    if (mode == "cpa") {
        oracle.emplace(Oracle::Direction::encrypting, hidden, leaders);
        const auto recovered = cpa_recover(*oracle, q, n);
        print_recovered(recovered);
        pass = recovered.table == hidden;
    } else if (mode == "cca" || mode == "leaders" || mode == "break") {
        oracle.emplace(Oracle::Direction::decrypting, hidden, leaders);
        auto recovered = cca_recover(*oracle, q, n);
        print_recovered(recovered);
        pass = recovered.table == hidden;

        if (mode != "cca") {
            recover_leader_translations(*oracle, recovered);
            for (int j = 1; j < n; ++j) {
                const auto& t = recovered.leader_translations[static_cast<std::size_t>(j - 1)];
                const auto truth = translation_of(hidden.table(), leaders.prefix(j));
                const auto cls = equivalent_leader_prefixes(recovered.table, t);
                std::cout << "slot " << j << " translation:";
                for (Symbol s : t.map) std::cout << ' ' << s;
                std::cout << "  equivalent prefixes:";
                for (const auto& p : cls) {
                    std::cout << " (";
                    for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? "," : "") << p[i];
                    std::cout << ")";
                }
                std::cout << "\n";
                pass = pass && t.map == truth.map &&
                       std::find(cls.begin(), cls.end(),
                                 std::vector<Symbol>(leaders.prefix(j).begin(),
                                                     leaders.prefix(j).end())) != cls.end();
            }
            std::cout << "translation queries: " << recovered.translation_query_count << "\n";
        }
        if (mode == "break") {
            SplitMix64 rng(seed ^ 0x0b5e55edULL);
            std::vector<Symbol> plain(message_len);
            for (auto& s : plain) s = static_cast<Symbol>(rng.next_below(q));
            const auto intercepted = encrypt_nary(hidden, leaders, Message::plain(plain));
            const auto broken = break_end_to_end(recovered, intercepted);
            std::cout << "intercepted " << message_len << " symbols; plaintext "
                      << (broken.symbols == plain ? "recovered exactly" : "MISMATCH") << "\n";
            pass = pass && broken.symbols == plain;
        }
    } else {
        throw std::runtime_error("mode must be cca, cpa, leaders, or break");
    }

    if (!transcript_path.empty() && oracle) {
        std::ofstream out(transcript_path);
        if (!out) throw std::runtime_error("cannot write '" + transcript_path + "'");
        write_transcript(*oracle, out);
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_verify(const std::string& key_path, const std::string& spec_text) {
    bool pass = true;
    if (!spec_text.empty()) {
        const auto spec = LinearQuasigroupSpec::parse(spec_text);
        const auto predicted = t1_criterion(spec);
        const auto observed = brute_force_report(materialize(spec));
        std::cout << "linear key " << spec.to_string() << ":\n";
        for (std::size_t i = 0; i < kNonIdentitySigmas.size(); ++i) {
            std::cout << "  A _|_ ^" << to_string(kNonIdentitySigmas[i])
                      << "A: " << (predicted.orthogonal[i] ? "yes" : "no") << " (criterion), "
                      << (observed.orthogonal[i] ? "yes" : "no") << " (brute force)\n";
        }
        pass = pass && predicted == observed;
    }
    if (!key_path.empty()) {
        const auto file = io::load_key_file(key_path);
        const int n = file.tables.front().arity();
        const bool is_system = file.tables.size() > 1;
        for (std::size_t i = 0; i < file.tables.size(); ++i) {
            const auto violation = find_quasigroup_violation(file.tables[i]);
            std::cout << "table " << i + 1 << " quasigroup: " << (violation ? "no" : "yes");
            if (violation) std::cout << " (" << violation->describe(file.tables[i].alphabet()) << ")";
            std::cout << "\n";
            if (!is_system) pass = pass && !violation;
        }
        if (is_system) {
            const bool stream_plus_system = file.tables.size() == static_cast<std::size_t>(n) + 1;
            const std::span<const OperationTable> system_tables(
                file.tables.data() + (stream_plus_system ? 1 : 0),
                file.tables.size() - (stream_plus_system ? 1 : 0));
            const auto collision = find_joint_collision(system_tables);
            std::cout << "orthogonal system: " << (collision ? "no" : "yes") << "\n";
            pass = pass && !collision;
            if (stream_plus_system) {
                pass = pass && is_quasigroup(file.tables.front());
            }
            if (!collision) {
                for (std::size_t i = 0; i < system_tables.size(); ++i) {
                    for (std::size_t j = i + 1; j < system_tables.size(); ++j) {
                        const std::vector<OperationTable> pair{system_tables[i], system_tables[j]};
                        std::cout << "tables " << i + 1 << "," << j + 1
                                  << " pairwise 2-orthogonal: "
                                  << (is_k_orthogonal(pair) ? "yes" : "no") << "\n";
                    }
                }
            }
        }
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_tables(const std::string& key_path, const std::string& alphabet_path) {
    const auto file = io::load_key_file(key_path);
    std::optional<Alphabet> alphabet;
    if (!alphabet_path.empty()) alphabet = io::load_alphabet(alphabet_path);
    for (std::size_t i = 0; i < file.tables.size(); ++i) {
        const auto& table = file.tables[i];
        std::cout << "table " << i + 1 << " (arity " << table.arity() << ", order " << table.q()
                  << "):\n";
        print_table_grid(std::cout, table, alphabet ? *alphabet : table.alphabet());
    }
    if (!file.leaders.empty()) {
        std::cout << "leaders:";
        for (Symbol l : file.leaders) std::cout << ' ' << l;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"table-based quasigroup ciphers and the attacks that break them"};
    app.require_subcommand(1);

    std::string kind, key_path, in_path, out_path, alphabet_path, engine, mode;
    std::string spec_text, leader_list, schedule_list, transcript_path;
    int q = 3, n = 2;
    std::uint64_t seed = 1;
    std::size_t message_len = 50;
    std::optional<std::uint64_t> rounds;
    bool vectorized = false;

    auto* keygen = app.add_subcommand("keygen", "generate a key file");
    keygen->add_option("kind", kind, "quasigroup | orthosystem | tquasigroup")->required();
    keygen->add_option("--q", q, "alphabet order");
    keygen->add_option("--n", n, "operation arity");
    keygen->add_option("--seed", seed, "deterministic seed");
    keygen->add_option("--spec", spec_text, "tquasigroup coefficients p:k:m:a");
    keygen->add_option("--leaders,--leader", leader_list, "leader symbols");
    keygen->add_option("--rounds", rounds, "block rounds directive");
    keygen->add_option("--out", out_path, "key file to write")->required();

    const auto add_cipher_options = [&](CLI::App* cmd) {
        cmd->add_option("--key", key_path, "key file")->required();
        cmd->add_option("--engine", engine, "binary | nary | block | leaderfan | mixed");
        cmd->add_option("--in", in_path, "input file")->required();
        cmd->add_option("--out", out_path, "output file")->required();
        cmd->add_option("--alphabet", alphabet_path, "alphabet file for text mode");
        cmd->add_option("--leaders,--leader", leader_list, "leader symbols (override)");
        cmd->add_option("--rounds", rounds, "block rounds (override)");
        cmd->add_option("--schedule", schedule_list, "mixed-mode digits (override)");
        cmd->add_option("--seed", seed, "seed for derived leaders");
        cmd->add_flag("--vectorize", vectorized, "treat input/output as raw bytes");
    };
    auto* encrypt = app.add_subcommand("encrypt", "encrypt a file");
    add_cipher_options(encrypt);
    auto* decrypt = app.add_subcommand("decrypt", "decrypt a file");
    add_cipher_options(decrypt);

    auto* attack = app.add_subcommand("attack", "demonstrate an attack against a key");
    attack->add_option("--mode", mode, "cca | cpa | leaders | break")->required();
    attack->add_option("--key", key_path, "target key file")->required();
    attack->add_option("--leaders,--leader", leader_list, "device leaders (override)");
    attack->add_option("--seed", seed, "seed for leaders/messages");
    attack->add_option("--message-len", message_len, "intercepted message length (break)");
    attack->add_option("--transcript", transcript_path, "write the oracle transcript here");

    auto* verify = app.add_subcommand("verify", "report table/system properties");
    verify->add_option("--key", key_path, "key file to check");
    verify->add_option("--tquasigroup", spec_text, "check a linear key p:k:m:a");

    auto* tables = app.add_subcommand("tables", "pretty-print a key file");
    tables->add_option("--key", key_path, "key file")->required();
    tables->add_option("--alphabet", alphabet_path, "alphabet file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (keygen->parsed()) {
            if (kind == "tquasigroup" && spec_text.empty()) {
                throw std::runtime_error("tquasigroup keygen needs --spec p:k:m:a");
            }
            return cmd_keygen(kind, q, n, seed, out_path, spec_text, leader_list, rounds);
        }
        if (encrypt->parsed() || decrypt->parsed()) {
            return cmd_encrypt(decrypt->parsed(), key_path, engine, in_path, out_path,
                               alphabet_path, vectorized, leader_list, rounds, schedule_list,
                               seed);
        }
        if (attack->parsed()) {
            return cmd_attack(mode, key_path, leader_list, seed, message_len, transcript_path);
        }
        if (verify->parsed()) {
            if (key_path.empty() && spec_text.empty()) {
                throw std::runtime_error("verify needs --key or --tquasigroup");
            }
            return cmd_verify(key_path, spec_text);
        }
        if (tables->parsed()) {
            return cmd_tables(key_path, alphabet_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
