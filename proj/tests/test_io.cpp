#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "symperm/error.hpp"
#include "symperm/families.hpp"
#include "symperm/io.hpp"

using namespace symperm;
using namespace symperm::io;

TEST_CASE("number formatting") {
    CHECK(format_number(2.0 / 3.0) == "0.666666666667");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_scientific(1.0) == "1.00000000000e0");
    CHECK(format_scientific(-2.5e-13) == "-2.50000000000e-13");
    CHECK(format_scientific(6.0) == "6.00000000000e0");
    CHECK(format_scientific(1.5e120) == "1.50000000000e120");
    CHECK(format_scientific(0.0) == "0");
    CHECK(format_complex(Complex(1.0, 0.0)) == "1.00000000000e0 + 0i");
    CHECK(format_complex(Complex(0.5, -2.0)) == "5.00000000000e-1 - 2.00000000000e0i");
}

TEST_CASE("matrix json") {
    const auto m = ComplexMatrix::from_rows({{1.0, Complex(0.0, 2.0)}, {3.0, 4.0}});
    const auto j = to_json(m);
    CHECK(matrix_from_json(j) == m);
    const auto parsed = matrix_from_json(json::parse(R"({"n": 2, "rows": [[[1, 0], [0, 2]], [[3, 0], [4, 0]]]})"));
    CHECK(parsed == m);
    CHECK(j.at("n") == 2);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"n": 2, "rows": [[[1, 0], [2, 0]], [[3, 0]]]})")),
                    ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"n": 1, "rows": [[1]]})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"n": 1, "rows": [[["x", 0]]]})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"n": 2, "rows": [[[1, 0]]]})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": []})")), ValidationError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"([1, 2])")), ValidationError);
}

TEST_CASE("multiset json") {
    const MultisetColumns cols(3, {{{1.0, 2.0, 3.0}, 2}, {{0.0, Complex(0.0, 1.0), 1.0}, 1}});
    const auto back = multiset_from_json(to_json(cols));
    REQUIRE(back.columns().size() == 2);
    CHECK(back.columns()[0].multiplicity == 2);
    CHECK(back.columns()[1].vector == cols.columns()[1].vector);
    CHECK_THROWS_AS(multiset_from_json(json::parse(R"({"n": 3, "columns": [{"vector": [[1, 0], [2, 0]], "multiplicity": 3}]})")),
                    ValidationError);
}

TEST_CASE("state json") {
    const auto s = ww_bar(0.3);
    const auto back = symmetric_state_from_json(to_json(s));
    CHECK(back.n() == 3);
    CHECK(back.d() == 2);
    for (const auto &k : compositions(3, 2)) {
        CHECK(back.coefficient(k) == s.coefficient(k));
    }
    const auto complex_state = SymmetricState::normalized(
        2, 3, CoefficientMap{{Composition{1, 1, 0}, Complex(0.3, -0.4)}, {Composition{0, 0, 2}, 1.0}});
    const auto cback = symmetric_state_from_json(to_json(complex_state));
    CHECK(cback.coefficient({1, 1, 0}) == complex_state.coefficient({1, 1, 0}));

    const ProductState p({{0.6, Complex(0.0, 0.8)}, {1.0, 0.0}});
    const auto pback = product_state_from_json(to_json(p));
    CHECK(pback.rows() == p.rows());

    CHECK_THROWS_AS(symmetric_state_from_json(json::parse(R"({"n": 3, "d": 2, "terms": [{"k": [2, 1], "coeff": [0.5, 0]}]})")), ValidationError);
    CHECK_THROWS_AS(symmetric_state_from_json(json::parse(R"({"n": 3})")), ValidationError);
    CHECK_THROWS_AS(product_state_from_json(json::parse(R"({"n": 1, "d": 2, "rows": [[[1, 0], [1, 0]]]})")), ValidationError);
}

TEST_CASE("text artifacts") {
    TrialViolation v;
    v.seed = 5;
    v.n = 3;
    v.d = 2;
    v.k = {2, 1};
    v.lhs = 0.5;
    v.rhs = 0.25;
    const auto text = violations_to_jsonl("probe", {v, v});
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    const auto first = json::parse(text.substr(0, text.find('\n')));
    CHECK(first.at("target") == "probe");
    CHECK(first.at("seed") == 5);
    CHECK(violations_to_jsonl("cll", {}).empty());

    const auto csv = sweep_to_csv(ww_bar_sweep(3));
    CHECK(csv.rfind("s,tan_theta,theta,lambda_direct,lambda_paper_prefactor,e_sin2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    CHECK(checksum("") == "cbf29ce484222325");
    CHECK(checksum("a") == "af63dc4c8601ec8c");

    const auto dir = std::filesystem::temp_directory_path() / "symperm_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "state.json";
    write_text_file(path, to_json(ghz(3)).dump());
    CHECK(symmetric_state_from_json(read_json_file(path)).coefficient({3, 0}) == ghz(3).coefficient({3, 0}));
    CHECK_THROWS_AS(read_json_file(dir / "missing.json"), ValidationError);
    {
        std::ofstream(dir / "broken.json") << "{not json";
    }
    CHECK_THROWS_AS(read_json_file(dir / "broken.json"), ValidationError);
    std::filesystem::remove_all(dir);
}
