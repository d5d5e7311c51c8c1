#pragma once

#include <string>

#include <json.hpp>

#include "semih/harness.hpp"

namespace semih {

using json = nlohmann::ordered_json;

/// Matrix file format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);
Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);

json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const json& j);

/// Report with the stable keys: norm_a, omega_a, r_a, omega_max, m_max,
/// c_re, c_im, d, formula_d2, normaloid, theorems[{id, verdict, slack}].
json report_to_json(const VerificationReport& report);
json campaign_to_json(const CampaignResult& result);

/// Reproduction artifact for a failing instance: spec, tolerances and the
/// exact matrices, so replay does not depend on generator evolution.
json instance_artifact(const InstanceSpec& spec, const Matrix& T, const Matrix& A,
                       const Tols& tols);
struct ReplayInput {
    InstanceSpec spec;
    Matrix T;
    Matrix A;
    Tols tols;
};
ReplayInput load_artifact(const std::string& path);

json tols_to_json(const Tols& tols);
Tols tols_from_json(const json& j);

} // namespace semih
