#include "nctorus/json_io.hpp"

#include <sstream>

#include "nctorus/errors.hpp"

namespace nctorus {

namespace {

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace

Json element_to_json(const AlgebraElement& a) {
    Json out = Json::array();
    for (const auto& [v, c] : a.coefficients())
        out.push_back(Json{{"m", v.m}, {"n", v.n}, {"re", c.real()}, {"im", c.imag()}});
    return out;
}

AlgebraElement element_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInputError("element: expected a JSON array of records");
    AlgebraElement a;
    for (const Json& rec : j) {
        const LatticeVector v{rec.at("m").get<std::int64_t>(), rec.at("n").get<std::int64_t>()};
        a.add_to(v, Complex(rec.at("re").get<double>(), rec.at("im").get<double>()));
    }
    return a;
}

Json params_to_json(const TorusParams& p) {
    return Json{{"theta", p.theta()}, {"tau_re", p.tau().real()}, {"tau_im", p.tau().imag()}};
}

TorusParams params_from_json(const Json& j) {
    return TorusParams(j.at("theta").get<double>(),
                       Complex(j.at("tau_re").get<double>(), j.at("tau_im").get<double>()));
}

Json series_to_json(const FormalSeries& s) {
    Json out = Json::array();
    for (int k = 0; k <= s.order(); ++k) out.push_back(element_to_json(s.coeff(k)));
    return out;
}

FormalSeries series_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw InvalidInputError("series: expected a non-empty JSON array");
    FormalSeries s(static_cast<int>(j.size()) - 1);
    for (int k = 0; k < static_cast<int>(j.size()); ++k)
        s.coeff(k) = element_from_json(j[static_cast<std::size_t>(k)]);
    return s;
}

Json scalar_series_to_json(const ScalarSeries& s) {
    Json out = Json::array();
    for (int k = 0; k <= s.order(); ++k) out.push_back(complex_to_json(s[k]));
    return out;
}

Json certificate_to_json(const ConvergenceCertificate& c) {
    return Json{{"gap_d", c.gap_d},
                {"ratio", c.ratio},
                {"invertible", c.invertible},
                {"terms_used", c.terms_used},
                {"tail_bound_l2", c.tail_bound_l2},
                {"residual", c.residual}};
}

Json halfplane_certificate_to_json(const HalfPlaneCertificate& c) {
    return Json{{"halfplane", Json{{"p", c.form.p}, {"q", c.form.q}}},
                {"epsilon", c.epsilon},
                {"terms_used", c.terms_used},
                {"tail_bound_l2", c.tail_bound_l2},
                {"residual", c.residual},
                {"gap_sequence", c.gap_sequence}};
}

Json neumann_to_json(const NeumannResult& r) {
    return Json{{"opening", r.opening},
                {"terms_used", r.terms_used},
                {"tail_bound", r.tail_bound},
                {"residual_l1", r.residual_l1}};
}

Json divisor_to_json(const Divisor& d) {
    Json entries = Json::array();
    for (const auto& [v, mult] : d.entries())
        entries.push_back(Json{{"m", v.m}, {"n", v.n}, {"mult", mult}});
    return entries;
}

Json coefficient_table_to_json(const std::vector<DivisorCoefficient>& rows) {
    Json out = Json::array();
    for (const DivisorCoefficient& row : rows) {
        out.push_back(Json{{"divisor", divisor_to_json(row.divisor)},
                           {"deg", row.degree},
                           {"s", Json{{"m", row.weighted_sum.m}, {"n", row.weighted_sum.n}}},
                           {"c", complex_to_json(row.c)},
                           {"c_star", complex_to_json(row.c_star)}});
    }
    return out;
}

Json scan_to_json(const SpectralScan& scan) {
    Json out;
    out["direction"] = element_to_json(scan.direction);
    out["radii"] = scan.radii;
    out["lambda_cutoff"] = scan.lambda_cutoff;
    out["stability_threshold"] = scan.stability_threshold;
    if (scan.nilpotency_halfplane.has_value()) {
        out["nilpotency_halfplane"] =
            Json{{"p", scan.nilpotency_halfplane->p}, {"q", scan.nilpotency_halfplane->q}};
        out["nilpotency_notice"] =
            "supp(a) lies in an open half-plane; the truncated operator is nilpotent and the "
            "line C a avoids the discriminant";
    }
    Json per_radius = Json::array();
    for (std::size_t i = 0; i < scan.radii.size(); ++i) {
        Json entry;
        entry["radius"] = scan.radii[i];
        Json eigs = Json::array();
        for (const Complex& l : scan.eigenvalues[i]) eigs.push_back(complex_to_json(l));
        entry["eigenvalues"] = eigs;
        Json hits = Json::array();
        for (const ThetaHit& h : scan.hits[i]) {
            hits.push_back(Json{{"t", complex_to_json(h.t)},
                                {"lambda", complex_to_json(h.lambda)},
                                {"drift", h.drift},
                                {"stable", h.stable}});
        }
        entry["theta_hits"] = hits;
        per_radius.push_back(entry);
    }
    out["scan"] = per_radius;
    return out;
}

std::string scan_to_csv(const SpectralScan& scan) {
    std::ostringstream os;
    os << "radius,lambda_re,lambda_im,t_re,t_im,drift,stable\n";
    os.precision(17);
    for (std::size_t i = 0; i < scan.radii.size(); ++i) {
        for (const ThetaHit& h : scan.hits[i]) {
            os << scan.radii[i] << ',' << h.lambda.real() << ',' << h.lambda.imag() << ','
               << h.t.real() << ',' << h.t.imag() << ',' << h.drift << ',' << (h.stable ? 1 : 0)
               << '\n';
        }
    }
    return os.str();
}

Json chi_to_json(const ChiReport& r) {
    return Json{{"value", complex_to_json(r.value)},
                {"lattice_point", Json{{"m", r.lattice_point.m}, {"n", r.lattice_point.n}}},
                {"residual", r.residual},
                {"quantized", r.quantized}};
}

FactoredElement factored_from_json(const Json& j) {
    if (j.is_array()) return FactoredElement::plain(element_from_json(j));
    FactoredElement f;
    if (j.contains("scale")) f.scale = complex_from_json(j.at("scale"));
    if (j.contains("vector"))
        f.v = {j.at("vector").at("m").get<std::int64_t>(),
               j.at("vector").at("n").get<std::int64_t>()};
    if (j.contains("rest")) f.rest = element_from_json(j.at("rest"));
    return f;
}

}  // namespace nctorus
