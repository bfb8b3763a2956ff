#pragma once

// Single-header nlohmann shipped in vendor/.
#include <json.hpp>

#include "nctorus/convergence.hpp"
#include "nctorus/exponentials.hpp"
#include "nctorus/series.hpp"
#include "nctorus/spectral.hpp"

namespace nctorus {

using Json = nlohmann::ordered_json;

/// Elements serialize as [{m, n, re, im}, ...] sorted lexicographically
/// by (m, n); that is exactly the map iteration order.
Json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const Json& j);

Json params_to_json(const TorusParams& p);
TorusParams params_from_json(const Json& j);

Json series_to_json(const FormalSeries& s);
FormalSeries series_from_json(const Json& j);

Json scalar_series_to_json(const ScalarSeries& s);

Json certificate_to_json(const ConvergenceCertificate& c);
Json halfplane_certificate_to_json(const HalfPlaneCertificate& c);
Json neumann_to_json(const NeumannResult& r);

Json divisor_to_json(const Divisor& d);
Json coefficient_table_to_json(const std::vector<DivisorCoefficient>& rows);

Json scan_to_json(const SpectralScan& scan);
/// One CSV row per (radius, eigenvalue, t-hit, drift).
std::string scan_to_csv(const SpectralScan& scan);

Json chi_to_json(const ChiReport& r);

/// Factored form {scale: {re, im}, vector: {m, n}, rest: [...]}; a plain
/// element array is accepted as the rest-only form.
FactoredElement factored_from_json(const Json& j);

}  // namespace nctorus
