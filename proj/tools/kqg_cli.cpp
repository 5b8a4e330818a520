// Command-line driver: enumeration, matrix display, batch verification,
// explicit subrepresentation construction, and the cluster cross-check.
// Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kqg/engine.hpp"

using namespace kqg;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

std::vector<int> parse_entry_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad entry list: " + s);
        out.push_back(v);
    }
    return out;
}

IndexTuple make_tuple(int m, const std::string& p) {
    IndexTuple P{m, parse_entry_list(p)};
    if (!P.valid()) throw std::invalid_argument("invalid tuple " + P.str() + " for m=" + std::to_string(m));
    return P;
}

json tuple_json(const IndexTuple& P) {
    return json{{"m", P.m}, {"entries", P.entries}};
}

json matrix_json(const LabeledMatrix& M) {
    json rows = json::array(), entries = json::array();
    for (const auto& l : M.row_labels) rows.push_back(l.str());
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M.at(r, c).str());
        entries.push_back(std::move(row));
    }
    return json{{"rows", rows}, {"cols", M.col_labels}, {"entries", entries}};
}

// Laurent polynomial in u, v, terms in descending (total degree, u-exponent).
std::string laurent_str(const Laurent2& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Laurent2::Exp, Int>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Int a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool has_var = e.first != 0 || e.second != 0;
        if (a != 1 || !has_var) os << a;
        if (e.first != 0) {
            if (a != 1) os << "*";
            os << "u";
            if (e.first != 1) os << "^" << e.first;
        }
        if (e.second != 0) {
            if (a != 1 || e.first != 0) os << "*";
            os << "v";
            if (e.second != 1) os << "^" << e.second;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

int cmd_enumerate(int m, const std::string& format) {
    Census c = cell_census(m);
    if (format == "json") {
        json out;
        out["m"] = m;
        out["total"] = c.total;
        json tuples = json::array();
        for (const auto& row : c.rows) {
            json t = tuple_json(row.P);
            t["e1"] = row.e1;
            t["e2"] = row.e2;
            t["dimension"] = row.dimension;
            tuples.push_back(std::move(t));
        }
        out["tuples"] = std::move(tuples);
        json census = json::array();
        for (const auto& [d, cnt] : c.counts)
            census.push_back(json{{"e1", d.first}, {"e2", d.second}, {"count", cnt}});
        out["census"] = std::move(census);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "m = " << m << ": " << c.total << " tuples\n";
        for (const auto& row : c.rows)
            std::cout << "  P = " << row.P.str() << "  e = (" << row.e1 << ", " << row.e2
                      << ")  dim = " << row.dimension << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

int cmd_matrices(int m, const std::string& p, std::optional<int> j, std::optional<int> k,
                 const std::string& format) {
    IndexTuple P = make_tuple(m, p);
    LabeledMatrix n2full = build_N2_full(P);
    LabeledMatrix n1 = build_N1(P);
    LabeledMatrix n2 = build_N2(P);
    // the y-rows on their own
    LabeledMatrix sprime;
    sprime.col_labels = n1.col_labels;
    for (int r = 0; r < n1.rows(); ++r)
        if (n1.row_labels[static_cast<std::size_t>(r)].tag == RowLabel::Tag::Prime) {
            sprime.row_labels.push_back(n1.row_labels[static_cast<std::size_t>(r)]);
            sprime.entries.push_back(n1.entries[static_cast<std::size_t>(r)]);
        }
    std::optional<LabeledMatrix> A;
    if (j && k) A = extract_A(P, *j, *k);
    if ((j.has_value()) != (k.has_value()))
        throw CLI::ValidationError("--j and --k must be given together");

    if (format == "json") {
        json out;
        out["P"] = tuple_json(P);
        out["N2_full"] = matrix_json(n2full);
        out["N2"] = matrix_json(n2);
        out["N1"] = matrix_json(n1);
        out["S_prime"] = matrix_json(sprime);
        if (A) out["A"] = matrix_json(*A);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "P = " << P.str() << ", m = " << m << "\n";
        if (P.n() == 0) {
            std::cout << "empty tuple: all matrices have no nonzero rows\n";
            return 0;
        }
        std::cout << "\nN2_full:\n" << n2full.render_text();
        std::cout << "\nN2:\n" << n2.render_text();
        std::cout << "\nN1:\n" << n1.render_text();
        if (sprime.rows() > 0) std::cout << "\nS':\n" << sprime.render_text();
        if (A) std::cout << "\nA_{" << *j << "," << *k << "}:\n" << A->render_text();
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(int m, const std::string& p, int trials, std::uint64_t seed, int workers,
               bool corrupt, const std::string& format) {
    std::vector<IndexTuple> tuples;
    if (!p.empty())
        tuples.push_back(make_tuple(m, p));
    else
        tuples = enumerate_tuples(m);

    struct Row {
        DetReport det;
        IdealReport ideal;
    };
    std::vector<Row> rows(tuples.size());
    std::atomic<bool> pass{true};
    parallel_for(tuples.size(), workers, [&](std::size_t i) {
        const IndexTuple& P = tuples[i];
        DetReport rep = verify_det_identity(P);
        if (corrupt) {
            // negative control: compare against deliberately shifted polynomials
            for (auto& r : rep.jk) {
                PolyZ dhat = relation_Dhat(P, r.jk.j, r.jk.k) + PolyZ::constant(Int(1));
                PolyZ det = det_symbolic(extract_A(P, r.jk.j, r.jk.k));
                r.match = (det == dhat) || (det == -dhat);
                if (!r.match) rep.all_match = false;
            }
        }
        if (!rep.all_match) pass.store(false);
        IdealReport ir = verify_ideal_equality(P, trials, trials, seed + i);
        if (!ir.pass) pass.store(false);
        rows[i] = Row{std::move(rep), std::move(ir)};
    });

    Census census = cell_census(m);
    if (format == "json") {
        json out;
        out["m"] = m;
        out["trials_per_tuple"] = trials;
        out["seed"] = seed;
        json reports = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json r;
            r["P"] = tuple_json(tuples[i]);
            json jk = json::array();
            for (const auto& jr : rows[i].det.jk)
                jk.push_back(json{{"j", jr.jk.j},
                                  {"k", jr.jk.k},
                                  {"sign", jr.sign},
                                  {"match", jr.match}});
            r["jk"] = std::move(jk);
            r["trials"] = json{{"points", rows[i].ideal.point_trials},
                               {"point_failures", rows[i].ideal.point_failures},
                               {"replays", rows[i].ideal.replay_trials},
                               {"replay_failures", rows[i].ideal.replay_failures},
                               {"replay_skipped", rows[i].ideal.replay_skipped}};
            reports.push_back(std::move(r));
        }
        out["reports"] = std::move(reports);
        json cens;
        cens["total"] = census.total;
        json by_dim = json::array();
        for (const auto& [d, cnt] : census.counts)
            by_dim.push_back(json{{"e1", d.first}, {"e2", d.second}, {"count", cnt}});
        cens["by_dim"] = std::move(by_dim);
        out["census"] = std::move(cens);
        out["pass"] = pass.load();
        std::cout << out.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << "P = " << tuples[i].str() << ": ";
            bool ok = rows[i].det.all_match && rows[i].ideal.pass;
            std::cout << (ok ? "pass" : "FAIL") << " (" << rows[i].det.jk.size()
                      << " determinant identities, " << rows[i].ideal.point_trials
                      << " cell points, " << rows[i].ideal.replay_trials << " replays)\n";
        }
        std::cout << (pass.load() ? "all checks passed" : "MISMATCH DETECTED") << "\n";
    }
    return pass.load() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// subrep
// ---------------------------------------------------------------------------

std::map<std::uint32_t, Rat> assignment_from_file(const IndexTuple& P, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json doc = json::parse(in);
    if (!doc.is_object()) throw std::invalid_argument("assignment file must be a JSON object");
    std::map<std::uint32_t, Rat> out;
    for (const auto& [name, value] : doc.items()) {
        PolyZ p = parse_poly(name);
        auto vars = p.variables();
        if (vars.size() != 1 || p != PolyZ::variable(vars[0]))
            throw std::invalid_argument("key is not a single variable: " + name);
        if (!value.is_number_integer())
            throw std::invalid_argument("value for " + name + " must be an integer");
        out[vars[0].key()] = Rat(value.get<long long>());
    }
    // completeness is re-checked by the solver
    (void)P;
    return out;
}

template <class F>
json cell_point_json(const CellPoint<F>& cp) {
    json out;
    out["P"] = tuple_json(cp.P);
    json assign;
    for (const auto& [key, val] : cp.assignment) {
        std::ostringstream os;
        os << val;
        assign[Var::from_key(key).str()] = os.str();
    }
    out["assignment"] = std::move(assign);
    auto dump_matrix = [](const std::vector<std::vector<F>>& m) {
        json rows = json::array();
        for (const auto& r : m) {
            json row = json::array();
            for (const auto& v : r) {
                std::ostringstream os;
                os << v;
                row.push_back(os.str());
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    out["N1"] = dump_matrix(cp.N1_num);
    out["N2"] = dump_matrix(cp.N2_num);
    auto n1 = cp.N1_num;
    auto n2 = cp.N2_num;
    out["rank_N1"] = rank(n1);
    out["rank_N2"] = rank(n2);
    out["closure"] = check_subrepresentation(cp);
    return out;
}

int cmd_subrep(int m, const std::string& p, bool ones, bool random_mode,
               std::optional<std::uint64_t> seed, const std::string& file,
               const std::string& format) {
    IndexTuple P = make_tuple(m, p);
    int modes = (ones ? 1 : 0) + (random_mode ? 1 : 0) + (file.empty() ? 0 : 1);
    if (modes != 1)
        throw CLI::ValidationError("choose exactly one of --ones, --random, --assignment");
    if (random_mode && !seed) throw CLI::ValidationError("--random requires --seed");

    json out;
    bool closure = false;
    if (random_mode) {
        std::mt19937_64 rng(*seed);
        auto b = random_b_assignment(P, rng);
        CellPoint<Fp61> cp = solve_cell_point<Fp61>(P, b);
        out = cell_point_json(cp);
        out["seed"] = *seed;
        closure = out["closure"].get<bool>();
    } else {
        std::map<std::uint32_t, Rat> b;
        if (ones)
            for (const auto& v : b_variables(P)) b[v.key()] = Rat(1);
        else
            b = assignment_from_file(P, file);
        CellPoint<Rat> cp = solve_cell_point<Rat>(P, b);
        out = cell_point_json(cp);
        closure = out["closure"].get<bool>();
    }
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "P = " << P.str() << ", m = " << m << "\n";
        std::cout << "solved assignment:\n";
        for (const auto& [name, val] : out["assignment"].items())
            std::cout << "  " << name << " = " << val.get<std::string>() << "\n";
        std::cout << "rank(N1) = " << out["rank_N1"].get<int>()
                  << ", rank(N2) = " << out["rank_N2"].get<int>() << "\n";
        std::cout << "closure: " << (closure ? "holds" : "FAILS") << "\n";
    }
    return closure ? 0 : 1;
}

// ---------------------------------------------------------------------------
// cluster-check
// ---------------------------------------------------------------------------

int cmd_cluster_check(int max_m, const std::string& format) {
    bool pass = true;
    json table = json::array();
    for (int m = 3; m <= max_m; ++m) {
        bool eq = x_of_module(m) == cluster_variable(m);
        if (!eq) pass = false;
        if (format == "json")
            table.push_back(json{{"m", m}, {"equal", eq}, {"x_m", laurent_str(cluster_variable(m))}});
        else
            std::cout << "m = " << m << ": " << (eq ? "equal" : "MISMATCH") << "  x_m = "
                      << laurent_str(cluster_variable(m)) << "\n";
    }
    if (format == "json") {
        json out{{"max", max_m}, {"table", std::move(table)}, {"pass", pass}};
        std::cout << out.dump(2) << "\n";
    } else if (max_m < 3) {
        std::cout << "empty table (max < 3)\n";
    } else {
        std::cout << (pass ? "all equal" : "MISMATCH DETECTED") << "\n";
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cell decompositions of rank-2 quiver Grassmannians: enumeration, matrices, and identity verification"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

    int m = 0;
    std::string p;
    auto* enumerate = app.add_subcommand("enumerate", "list all index tuples with dimension data");
    enumerate->add_option("--m", m, "family parameter (>= 3)")->required();

    auto* matrices = app.add_subcommand("matrices", "render the matrices attached to one tuple");
    matrices->add_option("--m", m)->required();
    matrices->add_option("--p", p, "comma-separated tuple entries (empty for the empty tuple)");
    std::optional<int> jopt, kopt;
    matrices->add_option("--j", jopt, "row of the square submatrix A_{j,k}");
    matrices->add_option("--k", kopt, "column of the square submatrix A_{j,k}");

    auto* verify = app.add_subcommand("verify", "run the determinant and on-variety checks");
    verify->add_option("--m", m)->required();
    verify->add_option("--p", p, "restrict to one tuple");
    int trials = 5;
    verify->add_option("--trials", trials, "randomized trials per tuple")->check(CLI::NonNegativeNumber);
    std::uint64_t seed = 0;
    verify->add_option("--seed", seed, "base seed for randomized trials")->required();
    int workers = default_workers();
    verify->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    bool corrupt = false;
    verify->add_flag("--debug-corrupt", corrupt, "negative control: verify against shifted polynomials");

    auto* subrep = app.add_subcommand("subrep", "construct an explicit cell point");
    subrep->add_option("--m", m)->required();
    subrep->add_option("--p", p)->required();
    bool ones = false, random_mode = false;
    std::string assignment_file;
    subrep->add_flag("--ones", ones, "assign 1 to every free variable");
    subrep->add_flag("--random", random_mode, "random assignment over the prime field");
    std::optional<std::uint64_t> seed_opt;
    subrep->add_option("--seed", seed_opt, "seed for --random");
    subrep->add_option("--assignment", assignment_file, "JSON file: variable name -> integer");

    auto* cluster = app.add_subcommand("cluster-check", "compare the generating function with the recursion");
    int max_m = 12;
    cluster->add_option("--max", max_m, "largest m to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(enumerate)) {
            if (m < 3) {
                std::cerr << "error: m must be >= 3\n";
                return 2;
            }
            return cmd_enumerate(m, format);
        }
        if (app.got_subcommand(matrices)) return cmd_matrices(m, p, jopt, kopt, format);
        if (app.got_subcommand(verify)) return cmd_verify(m, p, trials, seed, workers, corrupt, format);
        if (app.got_subcommand(subrep))
            return cmd_subrep(m, p, ones, random_mode, seed_opt, assignment_file, format);
        if (app.got_subcommand(cluster)) return cmd_cluster_check(max_m, format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
