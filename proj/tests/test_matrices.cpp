#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "kqg/matrices.hpp"
#include "kqg/tuples.hpp"

using namespace kqg;

namespace {

// Build the expected matrix from rows of "|"-free comma-separated polynomial
// strings and compare entry by entry.
void require_matrix_equals(const LabeledMatrix& M, const std::vector<std::vector<std::string>>& rows) {
    REQUIRE(M.rows() == static_cast<int>(rows.size()));
    for (int r = 0; r < M.rows(); ++r) {
        REQUIRE(M.cols() == static_cast<int>(rows[static_cast<std::size_t>(r)].size()));
        for (int c = 0; c < M.cols(); ++c) {
            INFO("row " << M.row_labels[static_cast<std::size_t>(r)].str() << " col "
                        << M.col_labels[static_cast<std::size_t>(c)]);
            REQUIRE(M.at(r, c) == parse_poly(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
        }
    }
}

} // namespace

TEST_CASE("small-space matrix for (0,3,4,7) in the m = 11 family", "[matrices]") {
    IndexTuple P{11, {0, 3, 4, 7}};
    LabeledMatrix M = build_N2_full(P);
    require_matrix_equals(M, {
        {"1", "0", "0", "x[1,4]", "0", "0", "0", "x[1,8]"},
        {"0", "1", "0", "x[2,4]", "0", "0", "0", "x[2,8]"},
        {"0", "0", "1", "x[3,4]", "0", "0", "0", "x[3,8]"},
        {"0", "0", "0", "0", "0", "0", "0", "0"},
        {"0", "0", "0", "0", "1", "0", "0", "x[5,8]"},
        {"0", "0", "0", "0", "0", "1", "0", "x[6,8]"},
        {"0", "0", "0", "0", "0", "0", "1", "x[7,8]"},
        {"0", "0", "0", "0", "0", "0", "0", "0"},
    });
    LabeledMatrix N2 = build_N2(P);
    REQUIRE(N2.rows() == 6); // = e_2
    REQUIRE(N2.cols() == 8);

    // The stacked big-space matrix: both column embeddings, no y-rows.
    LabeledMatrix N1 = build_N1(P);
    REQUIRE(N1.rows() == 12);
    REQUIRE(N1.cols() == 9);
    REQUIRE(build_N1_full(P).rows() == 16);
    // plain copy leaves the last column empty; shifted copy starts at column 2
    for (int r = 0; r < 6; ++r) REQUIRE(N1.at(r, 8).is_zero());
    for (int r = 6; r < 12; ++r) REQUIRE(N1.at(r, 0).is_zero());
    int r5 = N1.find_row(under(5));
    REQUIRE(r5 >= 0);
    REQUIRE(N1.at(r5, N1.find_col(6)) == parse_poly("1"));
    REQUIRE(N1.at(r5, N1.find_col(9)) == parse_poly("x[5,8]"));
}

TEST_CASE("big-space matrix with two y-rows for (0,2,3,3,4,4,5,6)", "[matrices]") {
    IndexTuple P{11, {0, 2, 3, 3, 4, 4, 5, 6}};
    LabeledMatrix N1 = build_N1(P);
    REQUIRE(N1.row_labels == std::vector<RowLabel>{over(1), over(2), over(6), under(1), under(2),
                                                   under(6), prime(4), prime(5)});
    require_matrix_equals(N1, {
        {"1", "0", "x[1,3]", "x[1,4]", "x[1,5]", "0", "x[1,7]", "x[1,8]", "0"},
        {"0", "1", "x[2,3]", "x[2,4]", "x[2,5]", "0", "x[2,7]", "x[2,8]", "0"},
        {"0", "0", "0", "0", "0", "1", "x[6,7]", "x[6,8]", "0"},
        {"0", "1", "0", "x[1,3]", "x[1,4]", "x[1,5]", "0", "x[1,7]", "x[1,8]"},
        {"0", "0", "1", "x[2,3]", "x[2,4]", "x[2,5]", "0", "x[2,7]", "x[2,8]"},
        {"0", "0", "0", "0", "0", "0", "1", "x[6,7]", "x[6,8]"},
        {"0", "0", "0", "1", "0", "0", "0", "y[4,8]", "y[4,9]"},
        {"0", "0", "0", "0", "1", "0", "0", "y[5,8]", "y[5,9]"},
    });
}

TEST_CASE("small-space matrix and y-row for (0,2,4,4,5,6)", "[matrices]") {
    IndexTuple P{11, {0, 2, 4, 4, 5, 6}};
    LabeledMatrix N2 = build_N2(P);
    require_matrix_equals(N2, {
        {"1", "0", "x[1,3]", "x[1,4]", "x[1,5]", "0", "x[1,7]", "x[1,8]"},
        {"0", "1", "x[2,3]", "x[2,4]", "x[2,5]", "0", "x[2,7]", "x[2,8]"},
        {"0", "0", "0", "0", "0", "1", "x[6,7]", "x[6,8]"},
    });
    LabeledMatrix N1 = build_N1(P);
    int rp = N1.find_row(prime(5));
    REQUIRE(rp >= 0);
    std::vector<std::string> expect{"0", "0", "0", "0", "1", "0", "0", "y[5,8]", "y[5,9]"};
    for (int c = 0; c < N1.cols(); ++c)
        REQUIRE(N1.at(rp, c) == parse_poly(expect[static_cast<std::size_t>(c)]));
    REQUIRE(sprime_columns(P, 5) == std::vector<int>{8, 9});
}

TEST_CASE("big-space matrix for (0,2,4,6) in the m = 10 family", "[matrices]") {
    IndexTuple P{10, {0, 2, 4, 6}};
    LabeledMatrix N1 = build_N1(P);
    REQUIRE(N1.row_labels == std::vector<RowLabel>{over(1), over(2), over(5), over(6), under(1),
                                                   under(2), under(5), under(6)});
    require_matrix_equals(N1, {
        {"1", "0", "x[1,3]", "x[1,4]", "0", "0", "x[1,7]", "0"},
        {"0", "1", "x[2,3]", "x[2,4]", "0", "0", "x[2,7]", "0"},
        {"0", "0", "0", "0", "1", "0", "x[5,7]", "0"},
        {"0", "0", "0", "0", "0", "1", "x[6,7]", "0"},
        {"0", "1", "0", "x[1,3]", "x[1,4]", "0", "0", "x[1,7]"},
        {"0", "0", "1", "x[2,3]", "x[2,4]", "0", "0", "x[2,7]"},
        {"0", "0", "0", "0", "0", "1", "0", "x[5,7]"},
        {"0", "0", "0", "0", "0", "0", "1", "x[6,7]"},
    });
}

TEST_CASE("structural properties of the matrices for all small tuples", "[matrices]") {
    for (int m = 3; m <= 8; ++m)
        for (const auto& P : enumerate_tuples(m)) {
            DimVector d = dim_vector(P);
            LabeledMatrix full = build_N2_full(P);
            // upper triangular with 0/1 diagonal
            for (int r = 0; r < full.rows(); ++r)
                for (int c = 0; c < r; ++c) REQUIRE(full.at(r, c).is_zero());
            LabeledMatrix N2 = build_N2(P);
            REQUIRE(N2.rows() == d.e2);
            LabeledMatrix N1 = build_N1(P);
            REQUIRE(N1.rows() ==
                    2 * d.e2 + static_cast<int>(a_blocks(P).size()));
            REQUIRE(N1.cols() == P.m - 2);
            // every y-variable lives in some y-row and nowhere else
            for (const auto& v : N1.variables())
                if (v.kind == VarKind::Y) {
                    int rp = N1.find_row(prime(v.a));
                    REQUIRE(rp >= 0);
                    REQUIRE(sprime_has_variable(P, v.a, v.b));
                }
            // row labels of N1: the block rows twice, then one prime row per
            // degenerate pair
            std::vector<RowLabel> expect;
            for (int a : b_set(P)) expect.push_back(over(a));
            for (int a : b_set(P)) expect.push_back(under(a));
            for (int beta : a_blocks(P)) expect.push_back(prime(P.at(2 * beta) + 1));
            REQUIRE(N1.row_labels == expect);
        }
}

TEST_CASE("label-driven submatrix extraction", "[matrices]") {
    IndexTuple P{10, {0, 2, 4, 6}};
    LabeledMatrix N1 = build_N1(P);
    LabeledMatrix S = general_submatrix(N1, {under(6)}, {1});
    REQUIRE(S.rows() == 7);
    REQUIRE(S.cols() == 7);
    REQUIRE(S.col_labels == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
    REQUIRE(S.find_row(under(6)) == -1);
    REQUIRE(S.at(0, 1) == parse_poly("x[1,3]")); // labels preserved
    REQUIRE_THROWS_AS(general_submatrix(N1, {prime(3)}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(general_submatrix(N1, {}, {99}), std::invalid_argument);
}

TEST_CASE("square submatrices attached to relation positions", "[matrices]") {
    IndexTuple P{10, {0, 2, 4, 6}};
    REQUIRE(removable_columns(P) == std::vector<int>{4, 8});
    REQUIRE(removable_rows(P) == std::vector<RowLabel>{under(1), under(5)});
    LabeledMatrix A = extract_A(P, 1, 3);
    DimVector d = dim_vector(P);
    REQUIRE(A.rows() == d.e1 + 1);
    REQUIRE(A.cols() == d.e1 + 1);
    // A_{1,3} keeps column k+1 = 4 and row 1_, removes column 8 and row 5_
    REQUIRE(A.find_col(4) >= 0);
    REQUIRE(A.find_col(8) == -1);
    REQUIRE(A.find_row(under(1)) >= 0);
    REQUIRE(A.find_row(under(5)) == -1);
}
