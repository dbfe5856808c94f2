#include <catch2/catch_amalgamated.hpp>

#include "charclass/matrix_io.hpp"

using namespace charclass;

TEST_CASE("matrix json round trip") {
    ComplexMatrix m(2, 2);
    m << Complex(1.5, -2.0), Complex(0.0, 3.25), Complex(-7.0, 0.125), Complex(4.0, 0.0);
    const ComplexMatrix back = read_matrix_json(write_matrix_json(m));
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("matrix json validation") {
    CHECK_THROWS_AS(read_matrix_json("{\"n\": 2, \"entries\": [[[1,0],[0,0]]]}"),
                    std::invalid_argument); // wrong row count
    CHECK_THROWS_AS(read_matrix_json("{\"n\": 1, \"entries\": [[[1]]]}"),
                    std::invalid_argument); // not an [re, im] pair
    CHECK_THROWS_AS(read_matrix_json("{\"entries\": []}"), std::invalid_argument);
    CHECK_THROWS_AS(read_matrix_json("{\"n\": 0, \"entries\": []}"), std::invalid_argument);
}

TEST_CASE("malformed json reports a position") {
    try {
        read_matrix_json("{\"n\": 2, \"entries\": [[[1,0],]]}");
        FAIL("expected parse error");
    } catch (const nlohmann::json::parse_error& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("complex formatting uses 15 significant digits") {
    CHECK(format_complex15(Complex(5.0, 0.0)) == "5 + 0 i");
    CHECK(format_complex15(Complex(-1.25, -2.5)) == "-1.25 - 2.5 i");
    CHECK(format_complex15(Complex(1.0 / 3.0, 0.0)).substr(0, 17) == "0.333333333333333");
}
