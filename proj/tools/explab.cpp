// explab — command-line surface over the divergence, tradeoff, composite,
// typelab and gallery modules. Outputs are deterministic for a fixed
// configuration and seed; +inf serializes as "inf". The process exits
// nonzero iff an asserted inequality fails.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "explab/composite.hpp"
#include "explab/divergence.hpp"
#include "explab/gallery.hpp"
#include "explab/json_io.hpp"
#include "explab/parallel.hpp"
#include "explab/rng.hpp"
#include "explab/tradeoff.hpp"
#include "explab/typelab.hpp"
#include "explab/verify.hpp"

namespace {

using explab::ClassicalWeight;
using explab::ExtReal;
using json = explab::io::json;
namespace cp = explab::composite;
namespace dv = explab::divergence;
namespace gl = explab::gallery;
namespace tf = explab::tradeoff;
namespace tl = explab::typelab;
namespace herm = explab::herm;

struct StateArg {
    std::optional<ClassicalWeight> classical;
    std::optional<herm::DensityOperator> quantum_density;
    std::optional<herm::HermitianOperator> quantum_weight;

    bool is_classical() const { return classical.has_value(); }
};

StateArg load_state(const std::string& path, bool as_density) {
    json j = explab::io::load_json(path);
    StateArg s;
    if (explab::io::json_is_quantum_state(j)) {
        herm::Matrix m = explab::io::matrix_from_json(j);
        if (as_density)
            s.quantum_density = herm::DensityOperator{m};
        else
            s.quantum_weight = herm::HermitianOperator{m};
    } else {
        s.classical = explab::io::weights_from_json(j);
    }
    return s;
}

std::vector<double> parse_grid(const std::string& spec) {
    // "start:stop:step", inclusive endpoints within half a step
    double start, stop, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0 ||
        stop < start)
        throw explab::ParseError("grid must be start:stop:step with positive step");
    std::vector<double> g;
    for (double x = start; x <= stop + 0.5 * step; x += step) g.push_back(x);
    if (g.empty()) throw explab::ParseError("grid is empty");
    return g;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        explab::io::write_text(out_path, j.dump(2) + "\n");
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        explab::io::write_text(out_path, text);
}

int report_exit(const gl::CounterexampleReport& rep) { return rep.all_pass() ? 0 : 1; }

dv::DivKind parse_kind(const std::string& name) {
    if (name == "relative") return dv::DivKind::relative;
    if (name == "petz") return dv::DivKind::petz;
    if (name == "sandwiched") return dv::DivKind::sandwiched;
    if (name == "log-euclidean") return dv::DivKind::log_euclidean;
    if (name == "maximal") return dv::DivKind::maximal;
    if (name == "max-rel") return dv::DivKind::max_rel;
    if (name == "chernoff") return dv::DivKind::chernoff;
    throw explab::ParseError("unknown divergence kind: " + name);
}

// ---------------------------------------------------------------------------

int cmd_divergence(const std::string& kind_name, double alpha, const std::string& rho_path,
                   const std::string& sigma_path, const std::string& out) {
    dv::DivKind kind = parse_kind(kind_name);
    StateArg rho = load_state(rho_path, /*as_density=*/true);
    StateArg sigma = load_state(sigma_path, /*as_density=*/false);
    if (rho.is_classical() != sigma.is_classical())
        throw explab::ParseError("divergence: rho and sigma must both be classical or both quantum");
    dv::DivergenceValue v = rho.is_classical()
                                ? dv::evaluate(kind, alpha, *rho.classical, *sigma.classical)
                                : dv::evaluate(kind, alpha, *rho.quantum_density, *sigma.quantum_weight);
    json j{{"kind", kind_name},
           {"alpha", explab::io::extreal_to_json(v.alpha)},
           {"value", explab::io::extreal_to_json(v.value)}};
    emit(j, out);
    return 0;
}

int cmd_tradeoff(const std::string& op, const std::string& rho_path, const std::string& sigma_path,
                 double r, double alpha, const std::string& grid, double a2, double b2,
                 double lambda, double target, const std::string& format, const std::string& out) {
    if (op == "d2") {
        emit(json{{"op", op}, {"value", explab::io::extreal_to_json(tf::d2(a2, b2))}}, out);
        return 0;
    }
    if (op == "solve-d2") {
        emit(json{{"op", op}, {"mu", tf::solve_d2(lambda, target)}}, out);
        return 0;
    }
    StateArg rs = load_state(rho_path, true);
    StateArg ss = load_state(sigma_path, false);
    if (rs.is_classical() != ss.is_classical())
        throw explab::ParseError("tradeoff: rho and sigma must both be classical or both quantum");

    auto eval_point = [&](const std::string& which, double rv) -> ExtReal {
        if (which == "hoeffding")
            return rs.is_classical() ? tf::hoeffding(*rs.classical, *ss.classical, rv)
                                     : tf::hoeffding(*rs.quantum_density, *ss.quantum_weight, rv);
        if (which == "anti")
            return rs.is_classical() ? tf::hoeffding_anti(*rs.classical, *ss.classical, rv)
                                     : tf::hoeffding_anti(*rs.quantum_density, *ss.quantum_weight, rv);
        throw explab::ParseError("tradeoff: unknown op " + which);
    };

    if (op == "hoeffding" || op == "anti") {
        if (grid.empty()) {
            emit(json{{"op", op}, {"r", r}, {"value", explab::io::extreal_to_json(eval_point(op, r))}},
                 out);
            return 0;
        }
        auto rg = parse_grid(grid);
        std::vector<std::pair<double, ExtReal>> pts(rg.size(), {0.0, ExtReal(0.0)});
        explab::parallel_for(rg.size(), [&](std::size_t i) { pts[i] = {rg[i], eval_point(op, rg[i])}; });
        if (format == "csv")
            emit_text(explab::io::curve_to_csv(pts, "r", op), out);
        else
            emit(explab::io::curve_to_json(pts, "r", op), out);
        return 0;
    }
    if (!rs.is_classical())
        throw explab::ParseError("tradeoff: op " + op + " requires classical states");
    const ClassicalWeight& rho = *rs.classical;
    const ClassicalWeight& sigma = *ss.classical;
    if (op == "arc") {
        auto p = tf::hellinger_arc(rho, sigma, alpha);
        emit(json{{"op", op},
                  {"alpha", p.alpha},
                  {"mu", explab::io::weights_to_json(p.mu)},
                  {"rate_to_sigma", p.rate_to_sigma},
                  {"rate_to_rho", p.rate_to_rho}},
             out);
        return 0;
    }
    if (op == "solve-rate") {
        auto p = tf::solve_rate_alpha(rho, sigma, r);
        emit(json{{"op", op},
                  {"r", r},
                  {"alpha_r", p.alpha},
                  {"mu", explab::io::weights_to_json(p.mu)},
                  {"rate_to_sigma", p.rate_to_sigma},
                  {"tilde_Psi", p.rate_to_rho}},
             out);
        return 0;
    }
    if (op == "r-infty") {
        emit(json{{"op", op}, {"value", explab::io::extreal_to_json(tf::r_infty(rho, sigma))}}, out);
        return 0;
    }
    if (op == "tilde-psi-curve") {
        auto l = tf::legendre_data_classical(rho, sigma);
        auto rg = parse_grid(grid.empty() ? "0.1:2.0:0.1" : grid);
        std::string csv = "r,tilde_Psi,case\n";
        json arr = json::array();
        for (double rv : rg) {
            double v = tf::legendre_tilde_Psi(l, rv);
            std::string regime = rv <= l.D1_plus ? "zero" : (rv >= l.r_infty ? "linear" : "interior");
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%s\n", rv, v, regime.c_str());
            csv += buf;
            arr.push_back(json{{"r", rv}, {"tilde_Psi", v}, {"case", regime}});
        }
        if (format == "csv")
            emit_text(csv, out);
        else
            emit(arr, out);
        return 0;
    }
    throw explab::ParseError("tradeoff: unknown op " + op);
}

int cmd_composite(const std::string& op, const std::string& null_path, const std::string& alt_path,
                  const std::string& kind_name, double alpha, double r, const std::string& grid,
                  const std::string& out) {
    cp::HypothesisSet rset = explab::io::hypothesis_set_from_json(explab::io::load_json(null_path));
    cp::HypothesisSet sset = explab::io::hypothesis_set_from_json(explab::io::load_json(alt_path));
    if (op == "div") {
        ExtReal v = cp::set_divergence(parse_kind(kind_name), alpha, rset, sset);
        emit(json{{"op", op}, {"kind", kind_name}, {"value", explab::io::extreal_to_json(v)}}, out);
        return 0;
    }
    if (op == "anti") {
        std::vector<double> ag = grid.empty() ? std::vector<double>{} : parse_grid(grid);
        auto rep = cp::set_anti_divergence(r, rset, sset, ag);
        json jt{{"op", op},
                {"r", r},
                {"value", rep.value},
                {"argmax", {rep.argmax.first, rep.argmax.second}}};
        json skipped = json::array();
        for (auto& pr : rep.skipped_pairs) skipped.push_back({pr.first, pr.second});
        jt["skipped_pairs"] = skipped;
        if (!ag.empty()) {
            json da = json::array();
            for (std::size_t i = 0; i < ag.size(); ++i)
                da.push_back(json{{"alpha", ag[i]},
                                  {"D_star", explab::io::extreal_to_json(rep.d_star_alpha[i])}});
            jt["d_star_alpha"] = da;
        }
        emit(jt, out);
        return 0;
    }
    if (op == "minimize" || op == "certificate") {
        auto pair = cp::minimize_Hr_over_hulls(rset, sset, r);
        json jp{{"op", op},
                {"r", r},
                {"value", pair.value},
                {"alpha_star", pair.alpha_star},
                {"theta", pair.theta},
                {"converged", pair.converged},
                {"fw_gap", pair.fw_gap},
                {"iterations", pair.iterations},
                {"rho_weights", pair.rho_weights},
                {"sigma_weights", pair.sigma_weights},
                {"rho_star", explab::io::weights_to_json(pair.rho_star)},
                {"sigma_star", explab::io::weights_to_json(pair.sigma_star)}};
        int exit_code = pair.converged ? 0 : 1;
        if (op == "certificate") {
            auto cert = cp::optimality_certificate(pair, rset, sset);
            jp["certificate"] = json{{"pass", cert.pass},
                                     {"worst_slack", cert.worst_slack},
                                     {"worst_generator", cert.worst_generator},
                                     {"worst_on_null_side", cert.worst_on_null_side}};
            if (!cert.pass) exit_code = 1;
        }
        emit(jp, out);
        return exit_code;
    }
    if (op == "geommean-bounds") {
        if (sset.size() != 2 || sset.is_classical())
            throw explab::ParseError("geommean-bounds: alternative set must hold two quantum states");
        auto rep = cp::geommean_composite_bounds(rset, sset.quantum[0], sset.quantum[1],
                                                 grid.empty() ? std::vector<double>{} : parse_grid(grid));
        json jg{{"op", op},
                {"lambda", rep.lambda},
                {"stein_bound", explab::io::extreal_to_json(rep.stein_bound)},
                {"pairwise_stein", explab::io::extreal_to_json(rep.pairwise_stein)}};
        json rows = json::array();
        for (std::size_t i = 0; i < rep.r_grid.size(); ++i)
            rows.push_back(json{{"r", rep.r_grid[i]},
                                {"hoeffding_bound", explab::io::extreal_to_json(rep.hoeffding_bound[i])},
                                {"pairwise_hoeffding",
                                 explab::io::extreal_to_json(rep.pairwise_hoeffding[i])}});
        jg["grid"] = rows;
        emit(jg, out);
        return 0;
    }
    throw explab::ParseError("composite: unknown op " + op);
}

int cmd_typelab(const std::string& op, const std::string& rho_path, const std::string& sigma_path,
                int n, double c, double r, const std::string& test_out, const std::string& out) {
    StateArg rs = load_state(rho_path, true);
    StateArg ss = load_state(sigma_path, false);
    if (!rs.is_classical() || !ss.is_classical())
        throw explab::ParseError("typelab: classical states required");
    const ClassicalWeight& rho = *rs.classical;
    const ClassicalWeight& sigma = *ss.classical;
    if (op == "np" || op == "ball") {
        tl::SymmetricTest test = op == "np" ? tl::np_test(rho, sigma, c, n)
                                            : tl::ball_test(sigma, r, n);
        if (!test_out.empty()) explab::io::write_text(test_out, tl::to_csv(test));
        ClassicalWeight nulls[] = {rho};
        ClassicalWeight alts[] = {sigma};
        auto e = tl::exact_errors(test, nulls, alts);
        json j{{"op", op},  {"n", n},
               {"c", c},    {"r", r},
               {"alpha_n", e.alpha},
               {"beta_n", e.beta},
               {"log_alpha", explab::io::extreal_to_json(e.log_alpha)},
               {"log_beta", explab::io::extreal_to_json(e.log_beta)}};
        if (op == "ball") {
            double bound = std::pow(n + 1.0, static_cast<double>(sigma.size())) * std::exp(-n * r);
            j["beta_bound"] = bound;
            j["pass"] = e.beta <= bound;
            emit(j, out);
            return e.beta <= bound ? 0 : 1;
        }
        emit(j, out);
        return 0;
    }
    throw explab::ParseError("typelab: unknown op " + op);
}

int cmd_adversarial(const std::string& null_path, const std::string& alt_path, double r, int n,
                    unsigned seed, const std::string& out) {
    cp::HypothesisSet rset = explab::io::hypothesis_set_from_json(explab::io::load_json(null_path));
    cp::HypothesisSet sset = explab::io::hypothesis_set_from_json(explab::io::load_json(alt_path));
    auto pair = cp::minimize_Hr_over_hulls(rset, sset, r);
    auto cert = cp::optimality_certificate(pair, rset, sset);
    cp::require_certificate(cert);
    tl::AdversarialConfig cfg;
    cfg.seed = seed;
    auto rep = tl::adversarial_product_errors(pair, cert, rset, sset, r, n, cfg);
    json j{{"op", "adversarial"},
           {"n", rep.n},
           {"r", rep.r},
           {"c", rep.c},
           {"alpha_star", rep.alpha_star},
           {"theta", rep.theta},
           {"beta_bound", rep.beta_bound},
           {"worst_beta", rep.worst_beta},
           {"alpha_bound", rep.alpha_bound},
           {"worst_alpha", rep.worst_alpha},
           {"beta_strategies", rep.beta_strategies},
           {"beta_exhaustive", rep.beta_exhaustive},
           {"pass", rep.pass}};
    emit(j, out);
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explab: divergences, error exponents and certified counterexample reports "
                 "for binary state discrimination"};
    app.require_subcommand(1);

    std::string rho_path, sigma_path, null_path, alt_path, out, test_out, grid, format = "json";
    std::string kind = "relative", op;
    double alpha = 0.5, r = 0.2, t = 0.2, c = 0.0, a2 = 0.5, b2 = 0.5, lambda = 0.5, target = 0.1;
    double tol = 1e-8;
    int n = 10, k = 1, depth = 0, kn_max = 14, num_tests = 1000, n_max = 30, dim = 2, trials = 100;
    unsigned seed = 0;

    auto* divc = app.add_subcommand("divergence", "pairwise divergence of two states");
    divc->add_option("--kind", kind,
                     "relative|petz|sandwiched|log-euclidean|maximal|max-rel|chernoff");
    divc->add_option("--alpha", alpha, "Renyi order");
    divc->add_option("--rho", rho_path, "state JSON (weights array or matrix object)")->required();
    divc->add_option("--sigma", sigma_path, "state JSON")->required();
    divc->add_option("--out", out, "output path (default stdout)");

    auto* trc = app.add_subcommand("tradeoff", "Hoeffding (anti-)divergence, arcs, transforms");
    trc->add_option("--op", op, "hoeffding|anti|arc|solve-rate|r-infty|tilde-psi-curve|d2|solve-d2")
        ->required();
    trc->add_option("--rho", rho_path, "state JSON");
    trc->add_option("--sigma", sigma_path, "state JSON");
    trc->add_option("--r", r, "type-II rate");
    trc->add_option("--alpha", alpha, "arc parameter");
    trc->add_option("--grid", grid, "r grid start:stop:step");
    trc->add_option("--a", a2, "d2 first argument");
    trc->add_option("--b", b2, "d2 second argument");
    trc->add_option("--lambda", lambda, "solve-d2 lambda");
    trc->add_option("--target", target, "solve-d2 target value");
    trc->add_option("--format", format, "json|csv");
    trc->add_option("--out", out, "output path");

    auto* cpc = app.add_subcommand("composite", "set divergences, hull minimizer, certificates");
    cpc->add_option("--op", op, "div|anti|minimize|certificate|geommean-bounds")->required();
    cpc->add_option("--null", null_path, "hypothesis set JSON")->required();
    cpc->add_option("--alt", alt_path, "hypothesis set JSON")->required();
    cpc->add_option("--kind", kind, "divergence kind for op=div");
    cpc->add_option("--alpha", alpha, "Renyi order for op=div");
    cpc->add_option("--r", r, "rate");
    cpc->add_option("--grid", grid, "alpha or r grid start:stop:step");
    cpc->add_option("--out", out, "output path");

    auto* tlc = app.add_subcommand("typelab", "finite-n tests and exact errors");
    tlc->add_option("--op", op, "np|ball")->required();
    tlc->add_option("--rho", rho_path, "classical state JSON")->required();
    tlc->add_option("--sigma", sigma_path, "classical state JSON")->required();
    tlc->add_option("--n", n, "number of copies");
    tlc->add_option("--c", c, "NP threshold");
    tlc->add_option("--r", r, "ball radius");
    tlc->add_option("--test-out", test_out, "CSV path for the per-type test");
    tlc->add_option("--out", out, "output path");

    auto* adv = app.add_subcommand("adversarial", "certified minimizer + product-strategy bounds");
    adv->add_option("--null", null_path, "hypothesis set JSON")->required();
    adv->add_option("--alt", alt_path, "hypothesis set JSON")->required();
    adv->add_option("--r", r, "rate");
    adv->add_option("--n", n, "number of copies");
    adv->add_option("--seed", seed, "strategy sampling seed");
    adv->add_option("--out", out, "output path");

    auto* gal = app.add_subcommand("gallery", "certified counterexample reports");
    gal->require_subcommand(1);
    auto* coin = gal->add_subcommand("coin", "fair coin vs two biased coins");
    coin->add_option("--k", k, "tensor power of the base coins");
    coin->add_option("--r-grid", grid, "rate grid start:stop:step");
    coin->add_option("--kn-max", kn_max, "finite-n exhaustive check size (0 disables)");
    coin->add_option("--tol", tol, "equality tolerance");
    coin->add_option("--out", out, "output path");
    auto* interval = gal->add_subcommand("interval", "[0,1] with countably many alternatives");
    interval->add_option("--n", n, "number of copies");
    interval->add_option("--r", r, "rate");
    interval->add_option("--depth", depth, "digit depth (0: use m_n)");
    interval->add_option("--cylinder-tests", num_tests, "random cylinder tests at depth 8 (0 disables)");
    interval->add_option("--seed", seed, "cylinder test seed");
    interval->add_option("--out", out, "output path");
    auto* stein = gal->add_subcommand("stein", "stein-gap identity report");
    stein->add_option("--rho", rho_path, "density matrix JSON (default: top diff eigenvector)");
    stein->add_option("--sigma1", sigma_path, "density matrix JSON");
    stein->add_option("--sigma2", alt_path, "density matrix JSON");
    stein->add_option("--dim", dim, "random dimension when no files are given");
    stein->add_option("--seed", seed, "random seed");
    stein->add_option("--trials", trials, "random triples to check");
    stein->add_option("--tol", tol, "identity tolerance");
    stein->add_option("--out", out, "output path");
    auto* direct = gal->add_subcommand("direct", "direct-exponent separation tuning");
    direct->add_option("--r", r, "type-II rate");
    direct->add_option("--t", t, "type-I target");
    direct->add_option("--rho", rho_path, "density matrix JSON (default: top diff eigenvector)");
    direct->add_option("--sigma1", sigma_path, "density matrix JSON (default: minimal 2x2)");
    direct->add_option("--sigma2", alt_path, "density matrix JSON");
    direct->add_option("--out", out, "output path");
    auto* pure = gal->add_subcommand("pure", "pure-state families via Gram matrices");
    pure->add_option("--seed", seed, "family seed");
    pure->add_option("--dim", dim, "Hilbert space dimension");
    pure->add_option("--n-max", n_max, "largest tensor power");
    pure->add_option("--out", out, "output path");
    auto* semi = gal->add_subcommand("semiclassical", "semi-classical test combiner");
    semi->add_option("--seed", seed, "instance seed");
    semi->add_option("--dim", dim, "dimension");
    semi->add_option("--out", out, "output path");

    auto* ver = app.add_subcommand("verify", "run certified check suites");
    std::vector<std::string> suites;
    ver->add_option("suites", suites, "suite names or 'all'");
    ver->add_option("--tol", tol, "identity tolerance where applicable");

    CLI11_PARSE(app, argc, argv);

    try {
        if (divc->parsed()) return cmd_divergence(kind, alpha, rho_path, sigma_path, out);
        if (trc->parsed())
            return cmd_tradeoff(op, rho_path, sigma_path, r, alpha, grid, a2, b2, lambda, target,
                                format, out);
        if (cpc->parsed()) return cmd_composite(op, null_path, alt_path, kind, alpha, r, grid, out);
        if (tlc->parsed()) return cmd_typelab(op, rho_path, sigma_path, n, c, r, test_out, out);
        if (adv->parsed()) return cmd_adversarial(null_path, alt_path, r, n, seed, out);

        if (gal->parsed()) {
            if (coin->parsed()) {
                std::vector<double> rg = grid.empty() ? std::vector<double>{} : parse_grid(grid);
                auto rep = gl::coin_example_report(k, rg, kn_max, tol);
                emit(explab::io::report_to_json(rep), out);
                return report_exit(rep);
            }
            if (interval->parsed()) {
                auto rep = depth > 0 ? gl::interval_example_report(n, r, depth)
                                     : gl::interval_example_report(n, r);
                json j = explab::io::report_to_json(rep);
                if (num_tests > 0) {
                    auto chk = gl::interval_cylinder_tradeoff_check(std::min(n, 8), 8, num_tests, seed);
                    j["cylinder_tradeoff"] = json{{"num_tests", chk.num_tests},
                                                  {"worst_margin", chk.worst_margin},
                                                  {"pass", chk.pass}};
                    if (!chk.pass) return 1;
                }
                emit(j, out);
                return report_exit(rep);
            }
            auto load_density = [&](const std::string& path) {
                return herm::DensityOperator{explab::io::matrix_from_json(explab::io::load_json(path))};
            };
            if (stein->parsed()) {
                if (!sigma_path.empty() && !alt_path.empty()) {
                    herm::DensityOperator s1 = load_density(sigma_path);
                    herm::DensityOperator s2 = load_density(alt_path);
                    herm::DensityOperator rho =
                        rho_path.empty() ? gl::top_diff_eigenvector_state(s1.op(), s2.op())
                                         : load_density(rho_path);
                    auto rep = gl::stein_gap_report(rho, s1, s2, tol);
                    emit(explab::io::report_to_json(rep), out);
                    return report_exit(rep);
                }
                explab::Rng rng(seed);
                json arr = json::array();
                bool ok = true;
                for (int i = 0; i < trials; ++i) {
                    herm::DensityOperator rho{explab::random_density_matrix(dim, rng)};
                    herm::DensityOperator s1{explab::random_density_matrix(dim, rng)};
                    herm::DensityOperator s2{explab::random_density_matrix(dim, rng)};
                    auto rep = gl::stein_gap_report(rho, s1, s2, tol);
                    ok = ok && rep.all_pass();
                    if (i == 0) arr.push_back(explab::io::report_to_json(rep));
                }
                json j{{"trials", trials}, {"all_pass", ok}, {"first_report", arr.at(0)}};
                emit(j, out);
                return ok ? 0 : 1;
            }
            if (direct->parsed()) {
                herm::DensityOperator s1 = sigma_path.empty() ? [] {
                    herm::Matrix m(2, 2);
                    m << 0.75, 0.25, 0.25, 0.25;
                    return herm::DensityOperator{m};
                }() : load_density(sigma_path);
                herm::DensityOperator s2 = alt_path.empty() ? [] {
                    herm::Matrix m(2, 2);
                    m << 0.25, 0.25, 0.25, 0.75;
                    return herm::DensityOperator{m};
                }() : load_density(alt_path);
                herm::DensityOperator rho = rho_path.empty()
                                                ? gl::top_diff_eigenvector_state(s1.op(), s2.op())
                                                : load_density(rho_path);
                auto tuned = gl::tune_direct_example(rho, s1, s2, r, t);
                emit(explab::io::report_to_json(tuned.report), out);
                return report_exit(tuned.report);
            }
            if (pure->parsed()) {
                explab::Rng rng(seed);
                std::vector<Eigen::VectorXcd> taken;
                std::vector<Eigen::VectorXcd> psis = gl::random_separated_family(dim, 3, rng, taken);
                std::vector<Eigen::VectorXcd> phis = gl::random_separated_family(dim, 2, rng, taken);
                std::vector<int> ng;
                for (int nn = 2; nn <= n_max; nn += 2) ng.push_back(nn);
                auto rep = gl::pure_state_report(psis, phis, ng);
                emit(explab::io::report_to_json(rep), out);
                return report_exit(rep);
            }
            if (semi->parsed()) {
                explab::Rng rng(seed);
                std::uniform_real_distribution<double> u01(0.0, 1.0);
                auto diag = [&](const std::vector<double>& d) {
                    herm::Matrix m = herm::Matrix::Zero(d.size(), d.size());
                    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
                    return herm::HermitianOperator{m};
                };
                std::vector<herm::HermitianOperator> rhos, sigmas, tests;
                for (int i = 0; i < 2; ++i) rhos.push_back(diag(explab::random_distribution(dim, rng)));
                for (int j2 = 0; j2 < 2; ++j2)
                    sigmas.push_back(diag(explab::random_distribution(dim, rng)));
                for (int i = 0; i < 4; ++i) {
                    std::vector<double> d(dim);
                    for (auto& x : d) x = u01(rng);
                    tests.push_back(diag(d));
                }
                auto res = gl::semiclassical_combine(rhos, sigmas, tests);
                json j{{"max_alpha", res.max_alpha},
                       {"alpha_bound", res.alpha_bound},
                       {"max_beta", res.max_beta},
                       {"beta_bound", res.beta_bound},
                       {"pass", res.pass}};
                emit(j, out);
                return res.pass ? 0 : 1;
            }
        }

        if (ver->parsed()) {
            auto specs = explab::verify::all_suites(tol);
            bool run_all = suites.empty();
            for (const auto& s : suites)
                if (s == "all") run_all = true;
            bool ok = true;
            for (const auto& spec : specs) {
                bool wanted = run_all;
                for (const auto& s : suites) wanted = wanted || s == spec.name;
                if (!wanted) continue;
                auto res = spec.runner();
                ok = ok && res.pass;
                std::printf("[%s] %-18s %6.2fs  %s\n", res.pass ? "PASS" : "FAIL", res.name.c_str(),
                            res.seconds, res.detail.c_str());
            }
            return ok ? 0 : 1;
        }
    } catch (const explab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
