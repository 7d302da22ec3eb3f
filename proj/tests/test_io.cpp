#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "qg/io.hpp"

using namespace qg;

TEST_CASE("table blocks parse with comments and flexible layout") {
    std::istringstream in(
        "# order-3 key\n"
        "2 3\n"
        "1 2 0\n"
        "2 0 1  # trailing comment\n"
        "0 1 2\n");
    const auto table = io::parse_table(in);
    CHECK(table == fixtures::order3_key().table());
}

TEST_CASE("table parse errors carry line numbers") {
    SUBCASE("missing values") {
        std::istringstream in("2 3\n1 2 0\n");
        CHECK_THROWS_WITH_AS(io::parse_table(in), doctest::Contains("line 2"), io::ParseError);
    }
    SUBCASE("value out of range") {
        std::istringstream in("2 3\n1 2 0 2 0 1 0 1 5\n");
        CHECK_THROWS_WITH_AS(io::parse_table(in), doctest::Contains("line 2"), io::ParseError);
    }
    SUBCASE("garbage token") {
        std::istringstream in("2 3\n1 2 0 2 0 x 0 1 2\n");
        CHECK_THROWS_AS(io::parse_table(in), io::ParseError);
    }
    SUBCASE("trailing content") {
        std::istringstream in("2 3\n1 2 0 2 0 1 0 1 2\n7\n");
        CHECK_THROWS_WITH_AS(io::parse_table(in), doctest::Contains("line 3"), io::ParseError);
    }
}

TEST_CASE("tables round trip through the text format") {
    std::ostringstream out;
    io::write_table(out, fixtures::ternary4_key().table());
    std::istringstream in(out.str());
    CHECK(io::parse_table(in) == fixtures::ternary4_key().table());
}

TEST_CASE("key files carry directives") {
    std::istringstream in(
        "3 4\n"
        "0 1 2 3 1 2 3 0 2 3 0 1 3 0 1 2\n"
        "1 0 3 2 0 1 2 3 3 2 1 0 2 3 0 1\n"
        "2 3 0 1 3 0 1 2 0 1 2 3 1 2 3 0\n"
        "3 2 1 0 2 3 0 1 1 0 3 2 0 1 2 3\n"
        "leaders: 0 1 2 3\n"
        "schedule: 4 5\n"
        "rounds: 3\n");
    const auto key = io::parse_key_file(in);
    REQUIRE(key.tables.size() == 1);
    CHECK(key.tables[0] == fixtures::ternary4_key().table());
    CHECK(key.leaders == std::vector<Symbol>{0, 1, 2, 3});
    CHECK(key.schedule == std::vector<int>{4, 5});
    CHECK(key.rounds == 3);
}

TEST_CASE("key files hold multi-table systems separated by ---") {
    io::KeyFile key;
    key.tables = {fixtures::ternary4_key().table(), fixtures::ternary4_groupoid_b(),
                  fixtures::ternary4_groupoid_c()};
    key.rounds = 2;
    std::ostringstream out;
    io::write_key_file(out, key);

    std::istringstream in(out.str());
    const auto parsed = io::parse_key_file(in);
    REQUIRE(parsed.tables.size() == 3);
    CHECK(parsed.tables[0] == key.tables[0]);
    CHECK(parsed.tables[1] == key.tables[1]);
    CHECK(parsed.tables[2] == key.tables[2]);
    CHECK(parsed.rounds == 2);
    CHECK(parsed.leaders.empty());
}

TEST_CASE("key file directive errors") {
    SUBCASE("duplicate directive") {
        std::istringstream in("2 2\n0 1 1 0\nleaders: 0\nleaders: 1\n");
        CHECK_THROWS_WITH_AS(io::parse_key_file(in), doctest::Contains("line 4"), io::ParseError);
    }
    SUBCASE("unknown directive") {
        std::istringstream in("2 2\n0 1 1 0\nwhatever: 1\n");
        CHECK_THROWS_AS(io::parse_key_file(in), io::ParseError);
    }
    SUBCASE("bad rounds") {
        std::istringstream in("2 2\n0 1 1 0\nrounds: 0\n");
        CHECK_THROWS_AS(io::parse_key_file(in), io::ParseError);
    }
}

TEST_CASE("alphabet files") {
    std::istringstream in("# letters\na b c\n");
    const auto alphabet = io::parse_alphabet(in);
    CHECK(alphabet.q() == 3);
    CHECK(alphabet.code_of("c") == 2);

    std::istringstream dup("a a b\n");
    CHECK_THROWS_AS(io::parse_alphabet(dup), io::ParseError);
    std::istringstream extra("a b\nc\n");
    CHECK_THROWS_WITH_AS(io::parse_alphabet(extra), doctest::Contains("line 2"), io::ParseError);
}

TEST_CASE("ciphertext files") {
    io::CiphertextFile file{"nary", 3, 4, 7, {1, 2, 3, 0, 1, 2, 3}};
    std::ostringstream out;
    io::write_ciphertext(out, file);
    CHECK(out.str().substr(0, 14) == "QC1 nary 3 4 7");

    std::istringstream in(out.str());
    const auto parsed = io::parse_ciphertext(in);
    CHECK(parsed.engine == "nary");
    CHECK(parsed.arity == 3);
    CHECK(parsed.q == 4);
    CHECK(parsed.message_len == 7);
    CHECK(parsed.symbols == file.symbols);

    std::istringstream bad("QC2 nary 3 4 7\n");
    CHECK_THROWS_AS(io::parse_ciphertext(bad), io::ParseError);
    std::istringstream range("QC1 nary 3 4 1\n9\n");
    CHECK_THROWS_AS(io::parse_ciphertext(range), io::ParseError);
}

TEST_CASE("text messages honor the alphabet") {
    const auto abc = fixtures::abc_alphabet();
    std::istringstream in("bbc\na acba\n");
    const auto symbols = io::parse_symbols_text(in, abc);
    CHECK(symbols == std::vector<Symbol>{1, 1, 2, 0, 0, 2, 1, 0});
    CHECK(io::format_symbols_text(symbols, abc) == "bbcaacba");

    const Alphabet numeric(5);
    std::istringstream digits("4 0 3\n");
    CHECK(io::parse_symbols_text(digits, numeric) == std::vector<Symbol>{4, 0, 3});
    CHECK(io::format_symbols_text(std::vector<Symbol>{4, 0, 3}, numeric) == "4 0 3");
}

TEST_CASE("symbol lists accept codes, commas, and tokens") {
    const auto abc = fixtures::abc_alphabet();
    CHECK(io::parse_symbol_list("0, 1 2", Alphabet(4)) == std::vector<Symbol>{0, 1, 2});
    CHECK(io::parse_symbol_list("a", abc) == std::vector<Symbol>{0});
    CHECK(io::parse_symbol_list("a,c 1", abc) == std::vector<Symbol>{0, 2, 1});
    CHECK_THROWS(io::parse_symbol_list("9", fixtures::abc_alphabet()));
}
