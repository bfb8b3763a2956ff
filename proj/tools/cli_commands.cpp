#include "cli_commands.hpp"

#include <random>

#include "nctorus/convergence.hpp"
#include "nctorus/exponentials.hpp"
#include "nctorus/random_gen.hpp"
#include "nctorus/spectral.hpp"

namespace nctorus::cli {

namespace {

Json report_skeleton(const char* command, const RunConfig& config) {
    Json j;
    j["tool"] = "nctorus";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config.to_json();
    return j;
}

struct IdentityCase {
    std::string identity;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

Json case_to_json(const IdentityCase& c, const RunConfig& config) {
    return Json{{"identity", c.identity},
                {"max_residual", c.max_residual},
                {"order", config.order},
                {"seed", config.seed},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
}

double ode_residual_left(const FormalSeries& x, const AlgebraElement& a,
                         const TorusParams& params) {
    const AlgebraElement da = delta(a, params);
    double worst = 0.0;
    for (int k = 1; k <= x.order(); ++k)
        worst = std::max(worst, norm_l1(delta(x.coeff(k), params) -
                                        mul(x.coeff(k - 1), da, params)));
    return worst;
}

FormalSeries apply_sl2(const Sl2Matrix& g, const FormalSeries& s) {
    FormalSeries out(s.order());
    for (int k = 0; k <= s.order(); ++k) out.coeff(k) = sl2_act(g, s.coeff(k));
    return out;
}

}  // namespace

Json RunConfig::to_json() const {
    Json j;
    j["params"] = Json{{"theta", theta}, {"tau_re", tau_re}, {"tau_im", tau_im}};
    j["order"] = order;
    j["box"] = box;
    j["tolerances"] = Json{{"default", tol}};
    j["seed"] = seed;
    j["cases"] = cases;
    j["format"] = format;
    if (input_path) j["input"] = *input_path;
    if (corrupt_pairing) j["corrupt_pairing"] = true;
    return j;
}

RunConfig RunConfig::from_json(const Json& j, RunConfig base) {
    if (j.contains("params")) {
        const Json& p = j.at("params");
        if (p.contains("theta")) base.theta = p.at("theta").get<double>();
        if (p.contains("tau_re")) base.tau_re = p.at("tau_re").get<double>();
        if (p.contains("tau_im")) base.tau_im = p.at("tau_im").get<double>();
    }
    if (j.contains("order")) base.order = j.at("order").get<int>();
    if (j.contains("box")) base.box = j.at("box").get<int>();
    if (j.contains("tolerances") && j.at("tolerances").contains("default"))
        base.tol = j.at("tolerances").at("default").get<double>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("cases")) base.cases = j.at("cases").get<int>();
    if (j.contains("format")) base.format = j.at("format").get<std::string>();
    return base;
}

CommandResult cmd_identities(const RunConfig& config) {
    const TorusParams params = config.params();
    const int N = config.order;
    const double tol = config.tol;
    std::mt19937_64 rng(config.seed);
    RandomElementSpec spec;
    spec.modes = 3;
    spec.trace_free = true;
    spec.target_l1 = 1.0;

    std::vector<IdentityCase> suite;
    auto record = [&](std::string name, double residual, double tolerance) {
        suite.push_back({std::move(name), residual, tolerance, residual < tolerance});
    };

    ExpContext ctx(params);
    double r_formal_i = 0.0, r_formal_ii = 0.0, r_prod = 0.0, r_prod_conj = 0.0;
    double r_inv = 0.0, r_norm_i = 0.0, r_norm_iii = 0.0;
    for (int c = 0; c < config.cases; ++c) {
        const AlgebraElement a = random_element(rng, spec);
        const FormalSeries el = E_l_divisor(a, ctx, N);
        r_formal_i = std::max(r_formal_i, ode_residual_left(el, a, params));
        for (int k = 1; k <= N; ++k)
            r_formal_ii = std::max(r_formal_ii, std::abs(trace(el.coeff(k))));

        const FormalSeries er = config.corrupt_pairing
                                    ? E_r(-a, params.with_negated_theta(), N)
                                    : E_r(-a, ctx, N);
        const FormalSeries lr = series_mul(el, er, params);
        const FormalSeries rl = series_mul(er, el, params);
        r_prod = std::max({r_prod, series_nonscalar_mass(lr), series_residual_l1(lr, rl)});
        if (!config.corrupt_pairing) {
            const ScalarSeries s_conj = series_trace(lr).conjugated();
            ExpContext conj_ctx(params.conjugate());
            r_prod_conj = std::max(
                r_prod_conj, s_conj.max_abs_diff(s_series(-star(a), conj_ctx, N).s));
        }

        const FormalSeries exp_l = Exp_l(a, ctx, N);
        const FormalSeries exp_r = Exp_r(-a, ctx, N);
        const FormalSeries prod = series_mul(exp_l, exp_r, params);
        r_inv = std::max(r_inv, series_residual_l1(prod, FormalSeries::one(N)));
        r_norm_i = std::max(r_norm_i, ode_residual_left(exp_l, a, params));

        const Complex z(0.31, -0.42);
        ScalarSeries tz(N);
        tz.at(1) = z;
        const FormalSeries lhs = Exp_l(AlgebraElement::scalar(z) + a, ctx, N);
        r_norm_iii =
            std::max(r_norm_iii, series_residual_l1(lhs, scalar_mul(tz.exp(), exp_l)));
    }
    record("formalthm_i_ode", r_formal_i, tol);
    record("formalthm_ii_trace", r_formal_ii, tol);
    record("prodprop_scalar", r_prod, tol);
    if (!config.corrupt_pairing) record("prodprop_conjugate", r_prod_conj, tol);
    record("inv_prop", r_inv, tol);
    record("formal_norm_thm_i_ode", r_norm_i, tol);
    record("formal_norm_thm_iii_shift", r_norm_iii, tol);

    {  // formal_norm_thm (ii): commutative collapse at theta = 0.
        const TorusParams flat(0.0, params.tau());
        ExpContext flat_ctx(flat);
        double worst = 0.0;
        for (int c = 0; c < std::max(1, config.cases / 2); ++c) {
            const AlgebraElement a = random_element(rng, spec);
            const FormalSeries lhs = Exp_l(a, flat_ctx, N);
            FormalSeries rhs(N);
            AlgebraElement pow = AlgebraElement::one();
            double kfact = 1.0;
            for (int k = 0; k <= N; ++k) {
                if (k > 0) {
                    pow = mul(pow, a, flat);
                    kfact *= k;
                }
                rhs.coeff(k) = Complex(1.0 / kfact) * pow;
            }
            worst = std::max(worst, series_residual_l1(lhs, rhs));
        }
        record("formal_norm_thm_ii_commutative", worst, tol);
    }

    {  // fncor and its f* analogue.
        CoefficientEngine& eng = ctx.engine();
        double worst = 0.0, worst_star = 0.0;
        for (int c = 0; c < config.cases; ++c) {
            const int n = 3 + static_cast<int>(rng() % 3);
            const auto vs = random_zero_sum_tuple(rng, n, 2);
            worst = std::max(worst, eng.fncor_check(vs));
            Complex sum(0.0);
            for (std::size_t i = 0; i < vs.size(); ++i) {
                std::vector<LatticeVector> rest;
                for (std::size_t j = 0; j < vs.size(); ++j)
                    if (j != i) rest.push_back(vs[j]);
                sum += iota(vs[i], params) * eng.f_star_n(rest);
            }
            worst_star = std::max(worst_star, std::abs(sum));
        }
        record("fncor", worst, tol);
        record("fncor_star", worst_star, tol);
    }

    {  // SL2 equivariance of the five maps.
        double worst = 0.0;
        const int reduced = std::max(2, N - 2);
        for (int c = 0; c < std::max(1, config.cases / 2); ++c) {
            const Sl2Matrix g = random_sl2(rng);
            const AlgebraElement a = random_element(rng, spec);
            const AlgebraElement ga = sl2_act(g, a);
            const TorusParams moved(params.theta(),
                                    g.transpose_inverse().moebius(params.tau()));
            ExpContext mctx(moved);
            worst = std::max(worst, series_residual_l1(E_l_divisor(ga, mctx, reduced),
                                                       apply_sl2(g, E_l_divisor(a, ctx, reduced))));
            worst = std::max(worst, series_residual_l1(E_r(ga, mctx, reduced),
                                                       apply_sl2(g, E_r(a, ctx, reduced))));
            worst = std::max(worst, series_residual_l1(Exp_l(ga, mctx, reduced),
                                                       apply_sl2(g, Exp_l(a, ctx, reduced))));
            worst = std::max(worst, series_residual_l1(Exp_r(ga, mctx, reduced),
                                                       apply_sl2(g, Exp_r(a, ctx, reduced))));
            worst = std::max(worst, s_series(ga, mctx, reduced)
                                        .s.max_abs_diff(s_series(a, ctx, reduced).s));
        }
        record("sl2_equivariance", worst, tol);
    }

    {  // Cocycle and chi quantization on certified invertibles.
        RandomElementSpec small = spec;
        small.target_l1 = 0.1;
        double worst_cocycle = 0.0, worst_chi = 0.0;
        const double conv_tol = 1e-11;
        for (int c = 0; c < std::max(1, config.cases / 2); ++c) {
            const AlgebraElement x = AlgebraElement::one() + random_element(rng, small);
            const AlgebraElement y = AlgebraElement::one() + random_element(rng, small);
            const auto Lx = log_derivative(FactoredElement::plain(x), params, conv_tol);
            const auto Ly = log_derivative(FactoredElement::plain(y), params, conv_tol);
            const auto Lxy =
                log_derivative(FactoredElement::plain(mul(x, y, params)), params, conv_tol);
            const auto y_inv = neumann_invert(y, params, conv_tol);
            const AlgebraElement rhs =
                mul(mul(y_inv.inverse, Lx.value, params), y, params) + Ly.value;
            worst_cocycle = std::max(worst_cocycle, norm_l1(Lxy.value - rhs));

            const auto conv = e_l_converge(random_element(rng, small), params, conv_tol);
            std::uniform_int_distribution<std::int64_t> mn(-2, 2);
            FactoredElement fx;
            fx.v = {mn(rng), mn(rng)};
            fx.rest = conv.value;
            const auto report = chi(fx, params, config.tol);
            worst_chi = std::max(worst_chi, report.residual);
            if (report.lattice_point != fx.v) worst_chi = 1.0;
        }
        record("cocycle", worst_cocycle, 1e-6);
        record("chi_quantization", worst_chi, 1e-8);
    }

    CommandResult out;
    out.report = report_skeleton("identities", config);
    Json results = Json::array();
    bool all_pass = true;
    for (const IdentityCase& c : suite) {
        results.push_back(case_to_json(c, config));
        all_pass = all_pass && c.pass;
    }
    out.report["results"] = results;
    out.report["pass"] = all_pass;
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

CommandResult cmd_exp(const RunConfig& config, const AlgebraElement& a,
                      const std::string& which) {
    const TorusParams params = config.params();
    ExpContext ctx(params);
    const int N = config.order;

    CommandResult out;
    out.report = report_skeleton("exp", config);
    out.report["which"] = which;
    out.report["input"] = element_to_json(a);

    if (which == "E_l") {
        out.report["series"] = series_to_json(E_l_divisor(a, ctx, N));
    } else if (which == "E_r") {
        out.report["series"] = series_to_json(E_r(a, ctx, N));
    } else if (which == "Exp_l") {
        out.report["series"] = series_to_json(Exp_l(a, ctx, N));
    } else if (which == "Exp_r") {
        out.report["series"] = series_to_json(Exp_r(a, ctx, N));
    } else if (which == "s") {
        out.report["series"] = scalar_series_to_json(s_series(a, ctx, N).s);
    } else {
        throw InvalidInputError("exp: unknown series '" + which + "'");
    }
    out.report["coefficient_table"] = coefficient_table_to_json(coefficient_table(a, ctx, N));
    return out;
}

CommandResult cmd_converge(const RunConfig& config, const AlgebraElement& a,
                           std::optional<HalfPlaneForm> halfplane) {
    const TorusParams params = config.params();
    CommandResult out;
    out.report = report_skeleton("converge", config);
    out.report["input"] = element_to_json(a);

    if (!a.supported_away_from_zero()) {
        out.report["rejection"] = Json{{"hypothesis", "trace(a) = 0"},
                                       {"value", std::abs(trace(a))}};
        out.exit_code = 2;
        return out;
    }

    const double d = lattice_gap(params.tau());
    const double ratio = norm_l1(delta(a, params)) / (kTwoPi * d);
    if (ratio < 1.0) {
        const auto res = e_l_converge(a, params, config.tol);
        out.report["path"] = "gap_certificate";
        out.report["certificate"] = certificate_to_json(res.certificate);
        out.report["result"] = element_to_json(res.value);
        return out;
    }

    std::vector<LatticeVector> supp;
    for (const auto& [v, c] : a.coefficients()) supp.push_back(v);
    if (!halfplane) halfplane = find_separating_halfplane(supp);
    if (halfplane) {
        const auto res = halfplane_converge(a, *halfplane, params, config.tol);
        out.report["path"] = "halfplane";
        out.report["certificate"] = halfplane_certificate_to_json(res.certificate);
        out.report["result"] = element_to_json(res.value);
        return out;
    }

    out.report["rejection"] =
        Json{{"hypothesis", "||delta(a)||_l1 < 2 pi d, or supp(a) inside an open half-plane"},
             {"ratio", ratio},
             {"gap_d", d}};
    out.exit_code = 3;
    return out;
}

CommandResult cmd_theta_scan(const RunConfig& config, const AlgebraElement& a,
                             const std::vector<int>& radii) {
    const TorusParams params = config.params();
    const auto scan = theta_line_scan(a, params, radii);
    CommandResult out;
    out.report = report_skeleton("theta-scan", config);
    out.report["scan"] = scan_to_json(scan);
    out.csv = scan_to_csv(scan);
    return out;
}

CommandResult cmd_chi(const RunConfig& config, const FactoredElement& x) {
    const TorusParams params = config.params();
    const auto report = chi(x, params, config.tol);
    CommandResult out;
    out.report = report_skeleton("chi", config);
    out.report["chi"] = chi_to_json(report);
    out.exit_code = report.quantized ? 0 : 1;
    return out;
}

}  // namespace nctorus::cli
