#include "w123/profile.hpp"

#include <algorithm>
#include <fstream>

#include "w123/errors.hpp"

namespace w123 {

ProfileConstants ProfileConstants::paper() {
    ProfileConstants p;
    p.name = "paper";
    p.p_U = 1e-4;
    p.eps_U = 1e-6;
    p.p_FW = 1e-4;
    p.eps_FW = 1e-6;
    p.m_levels = 1000;
    p.eps_FU = 1e-5;
    p.frac_NU = 2e-3;
    p.eps_loc = 1e-9;
    p.eps_len = 1e-9;
    p.frac_I = 0.95;
    p.modulus_M = 100;
    p.reserved_residues = {0, 1};
    p.min_delta_ratio = 1e20;
    return p;
}

ProfileConstants ProfileConstants::desk() { return ProfileConstants{}; }

void ProfileConstants::validate() const {
    auto prob = [](double x, const char* what) {
        if (!(x > 0.0 && x < 1.0)) throw InvalidArgument(std::string(what) + " must lie in (0, 1)");
    };
    auto positive = [](double x, const char* what) {
        if (!(x > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
    };
    prob(p_U, "p_U");
    prob(p_FW, "p_FW");
    positive(eps_U, "eps_U");
    positive(eps_FW, "eps_FW");
    positive(eps_FU, "eps_FU");
    positive(frac_NU, "frac_NU");
    positive(eps_loc, "eps_loc");
    positive(eps_len, "eps_len");
    positive(frac_I, "frac_I");
    if (!(eps_U < p_U)) throw InvalidArgument("eps_U must be smaller than p_U");
    if (m_levels < 2) throw InvalidArgument("m_levels must be at least 2");
    if (modulus_M < 4) throw InvalidArgument("modulus_M must be at least 4");
    if (reserved_residues.empty()) throw InvalidArgument("reserved_residues must not be empty");
    for (int r : reserved_residues) {
        if (r < 0 || r >= modulus_M) throw InvalidArgument("reserved residue outside [0, modulus_M)");
    }
    if (!(min_delta_ratio >= 0.0)) throw InvalidArgument("min_delta_ratio must be non-negative");
}

bool ProfileConstants::is_reserved(std::int64_t sum) const {
    std::int64_t r = sum % modulus_M;
    if (r < 0) r += modulus_M;
    return std::find(reserved_residues.begin(), reserved_residues.end(), static_cast<int>(r)) !=
           reserved_residues.end();
}

void to_json(nlohmann::json& j, const ProfileConstants& p) {
    j = nlohmann::json{{"name", p.name},
                       {"p_U", p.p_U},
                       {"eps_U", p.eps_U},
                       {"p_FW", p.p_FW},
                       {"eps_FW", p.eps_FW},
                       {"m_levels", p.m_levels},
                       {"eps_FU", p.eps_FU},
                       {"frac_NU", p.frac_NU},
                       {"eps_loc", p.eps_loc},
                       {"eps_len", p.eps_len},
                       {"frac_I", p.frac_I},
                       {"modulus_M", p.modulus_M},
                       {"reserved_residues", p.reserved_residues},
                       {"min_delta_ratio", p.min_delta_ratio}};
}

void from_json(const nlohmann::json& j, ProfileConstants& p) {
    if (!j.is_object()) throw InvalidArgument("profile JSON must be an object");
    if (auto it = j.find("base"); it != j.end()) {
        const auto base = it->get<std::string>();
        if (base == "paper") p = ProfileConstants::paper();
        else if (base == "desk") p = ProfileConstants::desk();
        else throw InvalidArgument("unknown profile base '" + base + "'");
    }
    static const char* known[] = {"base",    "name",      "p_U",     "eps_U",   "p_FW",
                                  "eps_FW",  "m_levels",  "eps_FU",  "frac_NU", "eps_loc",
                                  "eps_len", "frac_I",    "modulus_M", "reserved_residues",
                                  "min_delta_ratio"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw InvalidArgument("unknown profile field '" + key + "'");
        }
    }
    auto take = [&](const char* key, auto& field) {
        if (auto it = j.find(key); it != j.end()) it->get_to(field);
    };
    take("name", p.name);
    take("p_U", p.p_U);
    take("eps_U", p.eps_U);
    take("p_FW", p.p_FW);
    take("eps_FW", p.eps_FW);
    take("m_levels", p.m_levels);
    take("eps_FU", p.eps_FU);
    take("frac_NU", p.frac_NU);
    take("eps_loc", p.eps_loc);
    take("eps_len", p.eps_len);
    take("frac_I", p.frac_I);
    take("modulus_M", p.modulus_M);
    take("reserved_residues", p.reserved_residues);
    take("min_delta_ratio", p.min_delta_ratio);
}

ProfileConstants load_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open profile file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("profile file '" + path + "': " + e.what());
    }
    ProfileConstants p = ProfileConstants::desk();
    from_json(j, p);
    p.validate();
    return p;
}

void to_json(nlohmann::json& j, const Budgets& b) {
    j = nlohmann::json{{"resample_factor", b.resample_factor},
                       {"partition_restarts", b.partition_restarts},
                       {"wstage_reruns", b.wstage_reruns},
                       {"pipeline_restarts", b.pipeline_restarts}};
}

}  // namespace w123
