#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qg/algebra.hpp"
#include "qg/cipher.hpp"

namespace qg::io {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what);
    int line;
};

/// Alphabet file: one significant line of q distinct whitespace-separated
/// tokens; position = code. '#' starts a comment.
Alphabet parse_alphabet(std::istream& in);
Alphabet load_alphabet(const std::string& path);

/// One table block: a line "n q" followed by q^n whitespace-separated
/// values in lexicographic argument order. '#' starts a comment line.
OperationTable parse_table(std::istream& in);
OperationTable load_table(const std::string& path);
void write_table(std::ostream& out, const OperationTable& table);

/// Key file: one or more table blocks separated by "---" lines, then
/// optional directives "leaders:", "schedule:", "rounds:". One block is a
/// stream key; n blocks of arity n form an orthogonal system; n+1 blocks
/// are a mixed-mode key (stream key first, then the system).
struct KeyFile {
    std::vector<OperationTable> tables;
    std::vector<Symbol> leaders;  // empty when absent
    std::vector<int> schedule;    // empty when absent
    std::optional<std::uint64_t> rounds;
};

KeyFile parse_key_file(std::istream& in);
KeyFile load_key_file(const std::string& path);
void write_key_file(std::ostream& out, const KeyFile& key);
void save_key_file(const std::string& path, const KeyFile& key);

/// Ciphertext file: header "QC1 <engine> <n> <q> <msg-len>" followed by the
/// cipher symbols as whitespace-separated integers. msg-len is the
/// plaintext symbol count (block modes emit more cipher symbols than that).
struct CiphertextFile {
    std::string engine;
    int arity;
    int q;
    std::size_t message_len;
    std::vector<Symbol> symbols;
};

CiphertextFile parse_ciphertext(std::istream& in);
CiphertextFile load_ciphertext(const std::string& path);
void write_ciphertext(std::ostream& out, const CiphertextFile& file);
void save_ciphertext(const std::string& path, const CiphertextFile& file);

/// Text-mode message: with single-character tokens the file is read
/// character by character (whitespace skipped); multi-character tokens are
/// whitespace-separated. Numeric alphabets read whitespace-separated
/// integers.
std::vector<Symbol> parse_symbols_text(std::istream& in, const Alphabet& alphabet);
std::string format_symbols_text(std::span<const Symbol> symbols, const Alphabet& alphabet);

/// Parses "0 1 2", "0,1,2" or token lists like "a" against the alphabet.
std::vector<Symbol> parse_symbol_list(const std::string& text, const Alphabet& alphabet);

} // namespace qg::io
