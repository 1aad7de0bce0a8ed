#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "maxtree/matrix_io.hpp"
#include "support/fixtures.hpp"

using namespace maxtree;

TEST_CASE("scalars: rationals and decimals") {
  CHECK(io::parse_scalar("21/80") == 21.0 / 80);
  CHECK(io::parse_scalar(" 7/32 ") == 7.0 / 32);
  CHECK(io::parse_scalar("1/3") == 1.0 / 3);
  CHECK(io::parse_scalar("0.25") == 0.25);
  CHECK(io::parse_scalar("+2") == 2.0);
  CHECK(io::parse_scalar("1e-3") == 1e-3);
  CHECK(io::parse_scalar("0") == 0.0);
  // Large parts still round once, via long double.
  CHECK(io::parse_scalar("18014398509481985/18014398509481984") == doctest::Approx(1.0));
  for (const char* bad : {"", "  ", "1/0", "/2", "3/", "a/b", "1.5/2", "abc", "1,5", "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(io::parse_scalar(bad), ParseError);
  }
}

TEST_CASE("the example file parses to the exact rationals") {
  const NonnegMatrix a = io::read_matrix_file(std::filesystem::path(MAXTREE_DATA_DIR) / "example1.json");
  CHECK(a == fixtures::example_matrix());
}

TEST_CASE("JSON matrices") {
  CHECK(io::parse_matrix_json_text(R"({"rows": [[1, "1/2"], [0, 1]]})") ==
        NonnegMatrix{{1.0, 0.5}, {0.0, 1.0}});
  const NonnegMatrix rect = io::parse_matrix_json_text(R"({"rows": [[1, 0.5, 0]]})");
  CHECK(rect.rows() == 1);
  CHECK(rect.cols() == 3);
  for (const char* bad : {R"([[1]])", R"({"rows": 3})", R"({"rows": [[1, 2], [3]]})",
                          R"({"n": 3, "rows": [[1, 2], [3, 4]]})", R"({"n": 1, "rows": [[1, 2]]})",
                          R"({"rows": [[1, -2]]})", R"({"rows": [[1, true]]})", R"({"rows": []})",
                          R"({"rows": [[1, "x"]]})", R"({"rows": [[1, 2]])"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(io::parse_matrix_json_text(bad), ParseError);
  }
}

TEST_CASE("CSV matrices") {
  const NonnegMatrix a = io::parse_matrix_csv("# header\n1, 3/4\n\n1/2,1\n");
  CHECK(a == NonnegMatrix{{1.0, 0.75}, {0.5, 1.0}});
  CHECK_THROWS_AS(io::parse_matrix_csv("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix_csv("1,2\n3\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix_csv("1,,2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix_csv("1,nan\n2,3\n"), ParseError);
}

TEST_CASE("missing file is a parse error") {
  CHECK_THROWS_AS(io::read_matrix_file("/nonexistent/matrix.json"), ParseError);
}

TEST_CASE("format_double round-trips every double") {
  fixtures::Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = std::ldexp(fixtures::uniform(rng, 0.5, 1.0), static_cast<int>(fixtures::pick(rng, 0, 200)) - 100);
    CHECK(io::parse_scalar(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.2625) == "0.2625");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("JSON and CSV writers round-trip bit for bit") {
  fixtures::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const NonnegMatrix a = fixtures::random_irreducible(rng, fixtures::pick(rng, 1, 6));
    CHECK(io::parse_matrix_json(io::matrix_to_json(a)) == a);
    CHECK(io::parse_matrix_json_text(io::matrix_to_json(a).dump()) == a);
    CHECK(io::parse_matrix_csv(io::matrix_to_csv(a)) == a);
  }
}

TEST_CASE("files are read by extension or by content") {
  const auto dir = std::filesystem::temp_directory_path() / "maxtree_io_test";
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const char* text) {
    std::ofstream(dir / name) << text;
    return dir / name;
  };
  const NonnegMatrix expected{{1.0, 0.5}, {0.25, 1.0}};
  CHECK(io::read_matrix_file(write("m.csv", "1,1/2\n1/4,1\n")) == expected);
  CHECK(io::read_matrix_file(write("m.txt", "1,1/2\n1/4,1\n")) == expected);
  CHECK(io::read_matrix_file(write("m.dat", R"({"rows": [[1, 0.5], [0.25, 1]]})")) == expected);
  CHECK_THROWS_AS(io::read_matrix_file(write("bad.json", "1,2\n")), ParseError);
  std::filesystem::remove_all(dir);
}
