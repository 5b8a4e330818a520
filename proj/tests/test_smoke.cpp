#include <catch2/catch_amalgamated.hpp>

#include "kqg/engine.hpp"

TEST_CASE("headers compile and basic objects construct", "[smoke]") {
    kqg::IndexTuple P{11, {0, 3, 4, 7}};
    REQUIRE(P.valid());
    REQUIRE(kqg::dim_vector(P).e1 == 8);
    auto N1 = kqg::build_N1(P);
    REQUIRE(N1.cols() == 9);
}
