#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "radcurv/comparison.hpp"
#include "radcurv/curvature.hpp"
#include "radcurv/heat.hpp"
#include "radcurv/manifest.hpp"
#include "radcurv/spectral.hpp"

namespace radcurv {

// insertion-ordered documents so identical inputs serialize byte-identically
using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// shortest decimal that still round-trips to the same double (CSV cells;
// the JSON writer already emits this form natively)
std::string shortest_double(double v);

ojson to_json(const VerificationReport& rep);
ojson to_json(const CurvatureNorm& cn);
ojson to_json(const SpectralEstimate& est);
ojson to_json(const SpectralChain& chain);
ojson to_json(const PlapChain& chain);
ojson to_json(const HeatSolution& sol);  // header + times + mass, not rows
ojson to_json(const ModelSpace& ms);
ojson to_json(const Manifest& m);

// the schema-versioned report envelope; `manifest` may be null, `timestamp`
// off produces byte-identical output for identical inputs
ojson report_document(const std::vector<VerificationReport>& reports,
                      const ojson& manifest_echo, bool timestamp);

// markdown rendering of a report document (the `report` subcommand)
std::string render_markdown(const ojson& doc);

}  // namespace radcurv
