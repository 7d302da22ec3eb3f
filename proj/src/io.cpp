#include "qg/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qg::io {

ParseError::ParseError(int line_, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

/// Comment-stripped, tokenized significant lines.
std::vector<Line> significant_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream split(raw);
        Line line{number, {}};
        std::string token;
        while (split >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long long parse_int(const std::string& token, int line) {
    long long value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
        throw ParseError(line, "expected an integer, got '" + token + "'");
    }
    return value;
}

Symbol parse_symbol(const std::string& token, int q, int line) {
    const long long value = parse_int(token, line);
    if (value < 0 || value >= q) {
        throw ParseError(line, "symbol " + token + " outside alphabet of order " +
                                   std::to_string(q));
    }
    return static_cast<Symbol>(value);
}

/// Parses one table block starting at lines[at]; advances at past the block.
OperationTable parse_table_block(const std::vector<Line>& lines, std::size_t& at) {
    if (at >= lines.size()) {
        throw ParseError(lines.empty() ? 1 : lines.back().number, "expected a table header 'n q'");
    }
    const Line& header = lines[at];
    if (header.tokens.size() != 2) {
        throw ParseError(header.number, "table header must be exactly 'n q'");
    }
    const long long arity = parse_int(header.tokens[0], header.number);
    const long long q = parse_int(header.tokens[1], header.number);
    if (arity < 1 || arity > 16) throw ParseError(header.number, "arity out of range");
    if (q < 2 || q > 65535) throw ParseError(header.number, "alphabet order out of range");
    ++at;

    std::size_t need = 1;
    try {
        need = table_entry_count(static_cast<int>(q), static_cast<int>(arity));
    } catch (const std::invalid_argument& e) {
        throw ParseError(header.number, e.what());
    }

    std::vector<Symbol> values;
    values.reserve(need);
    while (values.size() < need) {
        if (at >= lines.size()) {
            throw ParseError(lines.back().number,
                             "table ended after " + std::to_string(values.size()) + " of " +
                                 std::to_string(need) + " values");
        }
        const Line& line = lines[at];
        for (const auto& token : line.tokens) {
            if (values.size() == need) {
                throw ParseError(line.number, "extra value '" + token + "' after the table");
            }
            values.push_back(parse_symbol(token, static_cast<int>(q), line.number));
        }
        ++at;
    }
    return OperationTable(static_cast<int>(arity), Alphabet(static_cast<int>(q)),
                          std::move(values));
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

} // namespace

Alphabet parse_alphabet(std::istream& in) {
    const auto lines = significant_lines(in);
    if (lines.empty()) throw ParseError(1, "alphabet file is empty");
    if (lines.size() > 1) {
        throw ParseError(lines[1].number, "alphabet file must be a single line of tokens");
    }
    try {
        return Alphabet(static_cast<int>(lines[0].tokens.size()), lines[0].tokens);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines[0].number, e.what());
    }
}

Alphabet load_alphabet(const std::string& path) {
    auto in = open_file(path);
    return parse_alphabet(in);
}

OperationTable parse_table(std::istream& in) {
    const auto lines = significant_lines(in);
    std::size_t at = 0;
    OperationTable table = parse_table_block(lines, at);
    if (at != lines.size()) {
        throw ParseError(lines[at].number, "unexpected content after the table");
    }
    return table;
}

OperationTable load_table(const std::string& path) {
    auto in = open_file(path);
    return parse_table(in);
}

void write_table(std::ostream& out, const OperationTable& table) {
    out << table.arity() << ' ' << table.q() << '\n';
    const std::size_t row = static_cast<std::size_t>(table.q());
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << table.values()[r] << ((r % row == row - 1) ? '\n' : ' ');
    }
}

KeyFile parse_key_file(std::istream& in) {
    const auto lines = significant_lines(in);
    KeyFile key;
    std::size_t at = 0;

    key.tables.push_back(parse_table_block(lines, at));
    while (at < lines.size() && lines[at].tokens == std::vector<std::string>{"---"}) {
        ++at;
        key.tables.push_back(parse_table_block(lines, at));
    }

    bool saw_leaders = false, saw_schedule = false, saw_rounds = false;
    const int q = key.tables.front().q();
    for (; at < lines.size(); ++at) {
        const Line& line = lines[at];
        const std::string& head = line.tokens.front();
        if (head == "leaders:") {
            if (saw_leaders) throw ParseError(line.number, "duplicate leaders: directive");
            saw_leaders = true;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                key.leaders.push_back(parse_symbol(line.tokens[i], q, line.number));
            }
            if (key.leaders.empty()) throw ParseError(line.number, "leaders: needs symbols");
        } else if (head == "schedule:") {
            if (saw_schedule) throw ParseError(line.number, "duplicate schedule: directive");
            saw_schedule = true;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                const long long d = parse_int(line.tokens[i], line.number);
                if (d < 1) throw ParseError(line.number, "schedule digits must be positive");
                key.schedule.push_back(static_cast<int>(d));
            }
            if (key.schedule.empty()) throw ParseError(line.number, "schedule: needs digits");
        } else if (head == "rounds:") {
            if (saw_rounds) throw ParseError(line.number, "duplicate rounds: directive");
            saw_rounds = true;
            if (line.tokens.size() != 2) throw ParseError(line.number, "rounds: needs one integer");
            const long long r = parse_int(line.tokens[1], line.number);
            if (r < 1) throw ParseError(line.number, "rounds must be at least 1");
            key.rounds = static_cast<std::uint64_t>(r);
        } else {
            throw ParseError(line.number, "unexpected '" + head + "' (expected a directive)");
        }
    }
    return key;
}

KeyFile load_key_file(const std::string& path) {
    auto in = open_file(path);
    return parse_key_file(in);
}

void write_key_file(std::ostream& out, const KeyFile& key) {
    for (std::size_t i = 0; i < key.tables.size(); ++i) {
        if (i) out << "---\n";
        write_table(out, key.tables[i]);
    }
    if (!key.leaders.empty()) {
        out << "leaders:";
        for (Symbol l : key.leaders) out << ' ' << l;
        out << '\n';
    }
    if (!key.schedule.empty()) {
        out << "schedule:";
        for (int d : key.schedule) out << ' ' << d;
        out << '\n';
    }
    if (key.rounds) out << "rounds: " << *key.rounds << '\n';
}

void save_key_file(const std::string& path, const KeyFile& key) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_key_file(out, key);
}

CiphertextFile parse_ciphertext(std::istream& in) {
    const auto lines = significant_lines(in);
    if (lines.empty()) throw ParseError(1, "ciphertext file is empty");
    const Line& header = lines[0];
    if (header.tokens.size() != 5 || header.tokens[0] != "QC1") {
        throw ParseError(header.number, "header must be 'QC1 <engine> <n> <q> <msg-len>'");
    }
    CiphertextFile file;
    file.engine = header.tokens[1];
    file.arity = static_cast<int>(parse_int(header.tokens[2], header.number));
    file.q = static_cast<int>(parse_int(header.tokens[3], header.number));
    const long long len = parse_int(header.tokens[4], header.number);
    if (file.arity < 2 || file.q < 2 || len < 0) {
        throw ParseError(header.number, "bad header parameters");
    }
    file.message_len = static_cast<std::size_t>(len);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        for (const auto& token : lines[i].tokens) {
            file.symbols.push_back(parse_symbol(token, file.q, lines[i].number));
        }
    }
    return file;
}

CiphertextFile load_ciphertext(const std::string& path) {
    auto in = open_file(path);
    return parse_ciphertext(in);
}

void write_ciphertext(std::ostream& out, const CiphertextFile& file) {
    out << "QC1 " << file.engine << ' ' << file.arity << ' ' << file.q << ' ' << file.message_len
        << '\n';
    for (std::size_t i = 0; i < file.symbols.size(); ++i) {
        out << file.symbols[i] << ((i % 20 == 19) ? '\n' : ' ');
    }
    if (file.symbols.size() % 20 != 0) out << '\n';
}

void save_ciphertext(const std::string& path, const CiphertextFile& file) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_ciphertext(out, file);
}

namespace {

bool single_char_tokens(const Alphabet& alphabet) {
    for (const auto& t : alphabet.tokens()) {
        if (t.size() != 1) return false;
    }
    return alphabet.has_tokens();
}

} // namespace

std::vector<Symbol> parse_symbols_text(std::istream& in, const Alphabet& alphabet) {
    std::vector<Symbol> symbols;
    if (single_char_tokens(alphabet)) {
        char c;
        while (in.get(c)) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            symbols.push_back(alphabet.code_of(std::string_view(&c, 1)));
        }
        return symbols;
    }
    std::string token;
    int line = 1;
    while (in >> token) {
        if (alphabet.has_tokens()) {
            symbols.push_back(alphabet.code_of(token));
        } else {
            symbols.push_back(parse_symbol(token, alphabet.q(), line));
        }
    }
    return symbols;
}

std::string format_symbols_text(std::span<const Symbol> symbols, const Alphabet& alphabet) {
    std::ostringstream out;
    const bool compact = single_char_tokens(alphabet);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (!compact && i) out << ' ';
        out << alphabet.display(symbols[i]);
    }
    return out.str();
}

std::vector<Symbol> parse_symbol_list(const std::string& text, const Alphabet& alphabet) {
    std::string spaced = text;
    for (char& c : spaced) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(spaced);
    std::vector<Symbol> symbols;
    std::string token;
    while (in >> token) {
        if (alphabet.has_tokens()) {
            // Accept either the token form or a bare code.
            try {
                symbols.push_back(alphabet.code_of(token));
                continue;
            } catch (const std::invalid_argument&) {
            }
        }
        symbols.push_back(parse_symbol(token, alphabet.q(), 1));
    }
    return symbols;
}

} // namespace qg::io
