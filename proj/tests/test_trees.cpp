#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "kqg/trees.hpp"

using namespace kqg;

namespace {

std::set<std::vector<int>> chain_set(const FibTree& T) {
    std::set<std::vector<int>> s;
    for (const auto& v : T.vertices) s.insert(v.chain);
    return s;
}

} // namespace

TEST_CASE("explicit vertex listing for the first family, span (1,3)", "[trees]") {
    FibTree T = build_tree(1, 1, 3, 3);
    std::set<std::vector<int>> expect{
        {3},
        {3, 3}, {3, 2}, {3, 1},
        {3, 3, 2}, {3, 3, 1}, {3, 2, 1},
        {3, 3, 2, 2}, {3, 3, 2, 1}, {3, 3, 1, 1}, {3, 2, 1, 1},
        {3, 3, 2, 2, 1},
        {3, 3, 2, 2, 1, 1},
    };
    REQUIRE(T.vertices.size() == 13);
    REQUIRE(chain_set(T) == expect);
    REQUIRE(framed_vertex_count(T) == 26);
}

TEST_CASE("explicit vertex listing for the second family, span (1,3)", "[trees]") {
    FibTree T = build_tree(2, 1, 3, 3);
    std::set<std::vector<int>> expect{
        {3},
        {3, 2}, {3, 1},
        {3, 2, 2}, {3, 2, 1}, {3, 1, 1},
        {3, 2, 2, 1},
        {3, 2, 2, 1, 1},
    };
    REQUIRE(T.vertices.size() == 8);
    REQUIRE(chain_set(T) == expect);
    REQUIRE(framed_vertex_count(T) == 16);
}

TEST_CASE("degenerate span gives the minimal trees", "[trees]") {
    FibTree T1 = build_tree(1, 2, 2, 3);
    REQUIRE(chain_set(T1) == std::set<std::vector<int>>{{2}, {2, 2}});
    FibTree T2 = build_tree(2, 2, 2, 3);
    REQUIRE(chain_set(T2) == std::set<std::vector<int>>{{2}});
    REQUIRE(framed_vertex_count(T2) == 2);
}

TEST_CASE("vertex counts depend only on the span width", "[trees]") {
    for (int n = 1; n <= 6; ++n)
        for (int nu = 1; nu <= n; ++nu)
            for (int mu = nu; mu <= n; ++mu)
                for (int eta = 1; eta <= 2; ++eta) {
                    std::size_t got = build_tree(eta, nu, mu, n).vertices.size();
                    std::size_t ref = build_tree(eta, 1, 1 + mu - nu, n).vertices.size();
                    REQUIRE(got == ref);
                }
}

TEST_CASE("trees are prefix-closed with valid parents and descent rules", "[trees]") {
    for (int n = 1; n <= 5; ++n)
        for (int nu = 1; nu <= n; ++nu)
            for (int mu = nu; mu <= n; ++mu)
                for (int eta = 1; eta <= 2; ++eta) {
                    FibTree T = build_tree(eta, nu, mu, n);
                    REQUIRE(T.vertices[0].chain == std::vector<int>{mu});
                    REQUIRE(T.vertices[0].parent == -1);
                    for (std::size_t i = 1; i < T.vertices.size(); ++i) {
                        const auto& v = T.vertices[i];
                        REQUIRE(v.parent >= 0);
                        REQUIRE(static_cast<std::size_t>(v.parent) < i);
                        auto pc = v.chain;
                        pc.pop_back();
                        REQUIRE(T.vertices[static_cast<std::size_t>(v.parent)].chain == pc);
                        int pos = static_cast<int>(v.chain.size()) - 1;
                        REQUIRE(chain_step_ok(eta, pos, v.chain[static_cast<std::size_t>(pos) - 1],
                                              v.chain.back()));
                        for (int e : v.chain) {
                            REQUIRE(e >= nu);
                            REQUIRE(e <= mu);
                        }
                        int cap = eta == 1 ? 2 * n : 2 * n - 1;
                        REQUIRE(static_cast<int>(v.chain.size()) <= cap);
                    }
                    // root path reconstruction agrees with chain prefixes
                    for (std::size_t i = 0; i < T.vertices.size(); ++i) {
                        auto path = path_from_root(T, static_cast<int>(i));
                        REQUIRE(path.size() == T.vertices[i].chain.size() - 1);
                        if (!path.empty()) REQUIRE(path.back() == static_cast<int>(i));
                    }
                }
}

TEST_CASE("chain growth alternates weak and strict descent by family", "[trees]") {
    // first family: weak at odd positions, strict at even
    REQUIRE(chain_step_ok(1, 1, 3, 3));
    REQUIRE(chain_step_ok(1, 1, 3, 2));
    REQUIRE_FALSE(chain_step_ok(1, 2, 3, 3));
    REQUIRE(chain_step_ok(1, 2, 3, 2));
    // second family: strict at odd positions, weak at even
    REQUIRE_FALSE(chain_step_ok(2, 1, 3, 3));
    REQUIRE(chain_step_ok(2, 1, 3, 2));
    REQUIRE(chain_step_ok(2, 2, 3, 3));
}
