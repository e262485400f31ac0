#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace w123 {

// Every numeric constant of the construction. Two built-ins: `paper()`
// holds the literal asymptotic constants (only meaningful for analytic and
// unit checks), `desk()` holds values that concentrate at degrees of a few
// hundred. All structural code is parametric in these fields.
struct ProfileConstants {
    std::string name = "desk";

    double p_U = 0.5;        // Pr(v in U)
    double eps_U = 0.1;      // tolerance on d_U(v), relative to d(v)
    double p_FW = 0.9;       // Pr(F-edge in F_W)
    double eps_FW = 0.1;     // tolerance on d_FW, relative to d_U(w) / d_W(u)
    int m_levels = 8;        // number of levels i_u
    double eps_FU = 0.2;     // tolerance on d_FU, relative to d(u) / d_F'(w)
    double frac_NU = 1.0;    // bound on |N^U_<=(u)| relative to d_U(u)
    double eps_loc = 0.16;   // near-location tolerance, relative to d_W(v)
    double eps_len = 0.2;    // grid length scale, relative to d_W(v)
    double frac_I = 0.95;    // occupancy bound, relative to l(v)
    int modulus_M = 10;
    std::vector<int> reserved_residues{0, 1};
    double min_delta_ratio = 30.0;  // required min degree / ln(max degree)

    static ProfileConstants paper();
    static ProfileConstants desk();

    // Throws InvalidArgument when an invariant fails.
    void validate() const;

    bool is_reserved(std::int64_t sum) const;

    // (1 - 1/m) / 2, the expected F_U fraction seen from W.
    double fu_fraction_w() const { return (1.0 - 1.0 / m_levels) / 2.0; }

    friend bool operator==(const ProfileConstants&, const ProfileConstants&) = default;
};

void to_json(nlohmann::json& j, const ProfileConstants& p);
// Fields missing from `j` keep the value already in `p`; the optional key
// "base" ("desk" or "paper") selects the starting profile.
void from_json(const nlohmann::json& j, ProfileConstants& p);

ProfileConstants load_profile_file(const std::string& path);

// Resampling and restart limits shared by the randomized stages.
struct Budgets {
    // Local resamples allowed per stage: factor * (entities in the stage) + 64.
    double resample_factor = 5.0;
    // Whole-partition redraws after a stage exhausts its local budget.
    std::size_t partition_restarts = 2;
    // Fresh-seed reruns of the W-stage after NoValidAddition.
    std::size_t wstage_reruns = 1;
    // Whole-pipeline restarts after a stage failure.
    std::size_t pipeline_restarts = 1;

    std::size_t local_limit(std::size_t entities) const {
        return static_cast<std::size_t>(resample_factor * static_cast<double>(entities)) + 64;
    }
};

void to_json(nlohmann::json& j, const Budgets& b);

}  // namespace w123
