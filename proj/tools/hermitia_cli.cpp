#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermitia/hermitia.h"

using Json = nlohmann::json;

namespace {

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

std::string cell(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "";
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    return j.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void print_csv(const Table& t) {
    auto line = [](const std::vector<std::string>& v) {
        for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << csv_field(v[i]);
        std::cout << "\r\n";
    };
    line(t.headers);
    for (const auto& r : t.rows) line(r);
}

// display width, counting UTF-8 code points
size_t width(const std::string& s) {
    size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

void print_table(const Table& t) {
    std::vector<size_t> w(t.headers.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = width(t.headers[i]);
    for (const auto& r : t.rows)
        for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], width(r[i]));
    auto line = [&](const std::vector<std::string>& v) {
        for (size_t i = 0; i < v.size(); ++i) {
            std::cout << v[i];
            if (i + 1 < v.size()) std::cout << std::string(w[i] - width(v[i]) + 2, ' ');
        }
        std::cout << "\n";
    };
    line(t.headers);
    for (const auto& r : t.rows) line(r);
}

std::string superscript(int n) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s = std::to_string(n), out;
    for (char c : s) out += c == '-' ? "⁻" : digits[c - '0'];
    return out;
}

// (p/q)·√r·π^m as p·π^m·√r/q
std::string pretty_lvalue(const Json& v) {
    if (!v.at("exact").is_null()) return v.at("exact").get<std::string>();
    std::string c = v.at("coefficient");
    std::string num = c, den;
    if (auto slash = c.find('/'); slash != std::string::npos) num = c.substr(0, slash), den = c.substr(slash + 1);
    std::string out;
    if (num == "-1") out = "-";
    else if (num != "1") out = num;
    int m = v.at("pi_power");
    long r = v.at("sqrt_radicand");
    if (m) out += "π" + (m == 1 ? std::string() : superscript(m));
    if (r != 1) out += "√" + std::to_string(r);
    if (out.empty() || out == "-") out += "1";
    if (!den.empty()) out += "/" + den;
    return out;
}

std::string shorten(const std::string& numeric, size_t digits) {
    if (numeric.size() <= digits + 2) return numeric;
    return numeric.substr(0, digits + 2) + "…";
}

struct Output {
    std::string mode;  // table, json, csv
    void emit(const Json& j, const Table& t, const std::string& text) const {
        if (mode == "json") std::cout << j.dump(2) << "\n";
        else if (mode == "csv") print_csv(t);
        else if (!text.empty()) std::cout << text;
        else print_table(t);
    }
};

int exit_code(hm_status st) {
    switch (st) {
        case HM_OK: return 0;
        case HM_ERR_ARGUMENT:
        case HM_ERR_PRECONDITION: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hermitia: sums of powers of binary Hermitian forms over Euclidean imaginary quadratic rings"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output = "table";
    int precision = 0;
    std::uint64_t seed = 0;
    app.add_option("--output,-o", output, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--precision", precision, "working precision in bits (default 128, env HERMITIA_PRECISION)");
    app.add_option("--seed", seed, "seed for randomized commands");

    int d = 0, k = 0, s = 0, trials = 100, grid = 64, steps = 30, kmin = 1, kmax = 0, repeats = 20;
    long n = 0, amax = 300;
    std::string delta;
    long delta_l = 0;
    std::vector<long> deltas;
    std::string re = "0", im = "0";
    bool float_path = false, all_k = false;

    auto add_d = [&](CLI::App* c) { c->add_option("--d", d, "d in {1, 2, 3, 7, 11}")->required(); };

    auto* c_alpha = app.add_subcommand("alpha", "constant alpha_{k,delta}");
    add_d(c_alpha);
    c_alpha->add_option("--k", k)->required();
    c_alpha->add_option("--delta", delta)->required();

    auto* c_theta = app.add_subcommand("theta", "Euler product theta(delta, s) with its local factors");
    add_d(c_theta);
    c_theta->add_option("--delta", delta_l)->required();
    c_theta->add_option("--s", s)->required();

    auto* c_rcount = app.add_subcommand("rcount", "residue count r(-delta, n)");
    add_d(c_rcount);
    c_rcount->add_option("--delta", delta_l)->required();
    c_rcount->add_option("--n", n)->required();

    auto* c_lvalue = app.add_subcommand("lvalue", "L(chi_{d_K}, s) by the Cohen-Zagier formula");
    add_d(c_lvalue);
    c_lvalue->add_option("--s", s)->required();
    c_lvalue->add_option("--delta", delta_l, "non-norm used by the formula (default: smallest)");

    auto* c_bench = app.add_subcommand("bench", "Cohen-Zagier path against the character-sum path");
    add_d(c_bench);
    c_bench->add_option("--s", s)->required();
    c_bench->add_option("--delta", deltas, "list of non-norms")->required();
    c_bench->add_option("--repeats", repeats);

    auto* c_hconst = app.add_subcommand("hconst", "H_{k,delta} at random points of K");
    add_d(c_hconst);
    c_hconst->add_option("--k", k)->required();
    c_hconst->add_option("--delta", delta_l)->required();
    c_hconst->add_option("--trials", trials);

    auto* c_average = app.add_subcommand("average", "average of truncated H_{k,delta} over a fundamental domain");
    add_d(c_average);
    c_average->add_option("--k", k)->required();
    c_average->add_option("--delta", delta_l)->required();
    c_average->add_option("--grid", grid);
    c_average->add_option("--amax", amax);

    auto* c_cfrac = app.add_subcommand("cfrac", "Hurwitz continued fraction of re + im*sqrt(-d)");
    add_d(c_cfrac);
    c_cfrac->add_option("--re", re, "rational, e.g. 3/7");
    c_cfrac->add_option("--im", im, "rational coefficient of sqrt(-d)");
    c_cfrac->add_option("--steps", steps);
    c_cfrac->add_flag("--float", float_path, "expand the nearest double with MPFR arithmetic");

    auto* c_dims = app.add_subcommand("dims", "dimensions of the cocycle spaces W_{k,k}");
    add_d(c_dims);
    c_dims->add_option("--kmin", kmin);
    c_dims->add_option("--kmax", kmax)->required();
    c_dims->add_flag("--all-k", all_k, "include even k");

    auto* c_basis = app.add_subcommand("basis", "certified basis of W_{k,k}");
    add_d(c_basis);
    c_basis->add_option("--k", k)->required();

    auto* c_expandp = app.add_subcommand("expandp", "transfer polynomial P_{k,delta}");
    add_d(c_expandp);
    c_expandp->add_option("--k", k)->required();
    c_expandp->add_option("--delta", delta)->required();

    auto* c_selftest = app.add_subcommand("selftest", "quick consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (!precision) {
        if (const char* env = std::getenv("HERMITIA_PRECISION")) {
            try {
                size_t used = 0;
                precision = std::stoi(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument(env);
            } catch (const std::exception&) {
                std::cerr << "error: HERMITIA_PRECISION is not an integer: '" << env << "'\n";
                return 2;
            }
        } else {
            precision = 128;
        }
    }

    std::unique_ptr<hm_session, decltype(&hm_session_free)> sess(hm_session_new(), hm_session_free);
    hm_session* h = sess.get();
    if (!h) return 3;
    if (hm_status st = hm_set_precision(h, precision); st != HM_OK) {
        std::cerr << "error: " << hm_last_error(h) << "\n";
        return exit_code(st);
    }
    hm_set_seed(h, seed);

    hm_status st = HM_OK;
    auto* sub = app.get_subcommands().front();
    if (sub == c_alpha) st = hm_alpha(h, d, k, delta.c_str());
    else if (sub == c_theta) st = hm_theta(h, d, delta_l, s);
    else if (sub == c_rcount) st = hm_rcount(h, d, delta_l, n);
    else if (sub == c_lvalue) st = hm_lvalue(h, d, s, delta_l);
    else if (sub == c_bench) st = hm_bench(h, d, s, deltas.data(), deltas.size(), repeats);
    else if (sub == c_hconst) st = hm_hconst(h, d, k, delta_l, trials);
    else if (sub == c_average) st = hm_average(h, d, k, delta_l, grid, amax);
    else if (sub == c_cfrac) st = hm_cfrac(h, d, re.c_str(), im.c_str(), steps, float_path);
    else if (sub == c_dims) st = hm_dims(h, d, kmin, kmax, !all_k);
    else if (sub == c_basis) st = hm_basis(h, d, k);
    else if (sub == c_expandp) st = hm_expandp(h, d, k, delta.c_str());
    else if (sub == c_selftest) st = hm_selftest(h);

    Json j = Json::parse(hm_result_json(h));
    if (j.is_null()) {
        std::cerr << "error: " << hm_last_error(h) << "\n";
        return exit_code(st);
    }

    Output out{output};
    Table t;
    std::ostringstream text;

    if (sub == c_alpha) {
        t = {{"d", "k", "delta", "alpha"}, {{cell(j["d"]), cell(j["k"]), cell(j["delta"]), cell(j["alpha"])}}};
        text << cell(j["alpha"]) << "\n";
    } else if (sub == c_theta) {
        t.headers = {"d", "s", "delta", "theta", "p", "case", "factor"};
        text << "theta(" << cell(j["delta"]) << ", " << cell(j["s"]) << ") = " << cell(j["theta"]) << "\n";
        for (const auto& f : j["factors"]) {
            t.rows.push_back({cell(j["d"]), cell(j["s"]), cell(j["delta"]), cell(j["theta"]), cell(f["p"]),
                              cell(f["case"]), cell(f["value"])});
            text << "  p = " << cell(f["p"]) << ": " << cell(f["value"]) << "  (" << cell(f["case"]) << ")\n";
        }
    } else if (sub == c_rcount) {
        t = {{"d", "delta", "n", "r"}, {{cell(j["d"]), cell(j["delta"]), cell(j["n"]), cell(j["r"])}}};
        text << cell(j["r"]) << "\n";
    } else if (sub == c_lvalue) {
        std::string shown = pretty_lvalue(j);
        t = {{"d", "s", "delta", "exact", "pi_power", "value", "numeric"},
             {{cell(j["d"]), cell(j["s"]), cell(j["delta"]), cell(j["exact"]), cell(j["pi_power"]), shown,
               cell(j["numeric"])}}};
        text << shown;
        if (j["exact"].is_null()) text << " ≈ " << shorten(j["numeric"], 30);
        text << "\n";
    } else if (sub == c_bench) {
        t.headers = {"method", "d", "s", "delta", "micros", "value"};
        for (const auto& r : j)
            t.rows.push_back({cell(r["method"]), cell(r["d"]), cell(r["s"]), cell(r["delta"]), cell(r["micros"]),
                              cell(r["value"])});
    } else if (sub == c_hconst) {
        t.headers = {"z", "H"};
        for (const auto& p : j["distinct"]) t.rows.push_back({cell(p["z"]["str"]), cell(p["value"])});
        int eq = j["equal"], tr = j["trials"];
        if (j["in_scope"].get<bool>()) {
            text << (eq == tr ? "PASS" : "FAIL") << ", " << eq << "/" << tr << " points equal " << cell(j["alpha"])
                 << "\n";
            if (eq != tr)
                for (const auto& r : t.rows) text << "  H(" << r[0] << ") = " << r[1] << "\n";
        } else {
            text << "outside the constancy theorem: " << eq << "/" << tr << " points equal alpha = "
                 << cell(j["alpha"]) << "; " << t.rows.size() << " distinct values\n";
            for (const auto& r : t.rows) text << "  H(" << r[0] << ") = " << r[1] << "\n";
        }
    } else if (sub == c_average) {
        std::ostringstream rel;
        rel << std::setprecision(4) << j["rel_error"].get<double>() * 100 << "%";
        t = {{"d", "k", "delta", "grid", "a_max", "quadrature", "formula", "rel_error"},
             {{cell(j["d"]), cell(j["k"]), cell(j["delta"]), cell(j["grid"]), cell(j["a_max"]), cell(j["quadrature"]),
               cell(j["formula"]), cell(j["rel_error"])}}};
        text << "quadrature " << cell(j["quadrature"]) << "\nformula    " << cell(j["formula"]) << "\nrel error  "
             << rel.str() << "\n";
    } else if (sub == c_cfrac) {
        t.headers = {"n", "alpha", "p", "q", "|delta|"};
        const auto& a = j["alphas"];
        for (size_t i = 0; i < a.size(); ++i)
            t.rows.push_back({std::to_string(i), cell(a[i]["str"]), cell(j["p"][i]["str"]), cell(j["q"][i]["str"]),
                              i < j["abs_deltas"].size() ? cell(j["abs_deltas"][i]) : ""});
    } else if (sub == c_dims) {
        std::vector<std::string> labels;
        for (const char* l : {"1", "i", "zeta", "zeta^2", "-1", "-i", "zeta^4", "zeta^5"})
            if (j[0]["report"]["dim_by_eigenvalue"].contains(l)) labels.push_back(l);
        t.headers = {"k"};
        for (const auto& l : labels) t.headers.push_back("W^" + l);
        for (const auto* h2 : {"total", "table_match", "conjecture_match", "seconds"}) t.headers.push_back(h2);
        for (const auto& r : j) {
            std::vector<std::string> row{cell(r["k"])};
            for (const auto& l : labels) row.push_back(cell(r["report"]["dim_by_eigenvalue"][l]));
            std::ostringstream secs;
            secs << std::fixed << std::setprecision(3) << r["report"]["seconds"].get<double>();
            row.push_back(cell(r["report"]["dim_W"]));
            row.push_back(r["table_match"].is_null() ? "-" : cell(r["table_match"]));
            row.push_back(r["conjecture_match"].is_null() ? "-" : cell(r["conjecture_match"]));
            row.push_back(secs.str());
            t.rows.push_back(row);
        }
    } else if (sub == c_basis) {
        t.headers = {"eigenvalue", "polynomial"};
        for (size_t i = 0; i < j["basis"].size(); ++i)
            t.rows.push_back({cell(j["basis_labels"][i]), cell(j["basis"][i]["str"])});
        text << "dim W = " << cell(j["dim_W"]) << "\n";
        for (const auto& r : t.rows) text << "[" << r[0] << "] " << r[1] << "\n";
    } else if (sub == c_expandp) {
        const auto& m = j["membership"];
        const auto& id = j["identities"];
        std::string mem = m["member"].get<bool>() ? "W^" + cell(m["tag"]) : "not in W";
        t = {{"d", "k", "delta", "polynomial", "membership", "swap", "unit", "1+S", "TS-identity", "d7-identity"},
             {{cell(j["d"]), cell(j["k"]), cell(j["delta"]), cell(j["poly"]["str"]), mem, cell(id["swap_symmetric"]),
               cell(id["unit_invariant"]), cell(id["s_kernel"]), cell(id["tse_identity"]),
               id["d7_identity"].is_null() ? "-" : cell(id["d7_identity"])}}};
        text << "P = " << cell(j["poly"]["str"]) << "\nmembership: " << mem << "\n";
        for (size_t i = 5; i < t.headers.size(); ++i) text << t.headers[i] << ": " << t.rows[0][i] << "\n";
    } else if (sub == c_selftest) {
        t.headers = {"check", "result", "detail"};
        for (const auto& it : j["items"]) {
            t.rows.push_back({cell(it["name"]), it["pass"].get<bool>() ? "PASS" : "FAIL", cell(it["detail"])});
            text << t.rows.back()[1] << "  " << t.rows.back()[0] << "  (" << t.rows.back()[2] << ")\n";
        }
    }
    out.emit(j, t, text.str());

    if (st != HM_OK) std::cerr << "error: " << hm_last_error(h) << "\n";
    return exit_code(st);
}
