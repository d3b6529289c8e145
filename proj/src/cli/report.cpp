#include "qrsk/cli.hpp"

#include <json.hpp>

namespace qrsk {

std::string suite_report_json(const SuiteReport& rep)
{
    nlohmann::ordered_json j;
    j["suite"] = rep.suite;
    j["cases"] = rep.cases;
    j["failed"] = rep.failed;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : rep.failures)
        j["failures"].push_back({{"instance", f.instance}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    return j.dump(2);
}

std::string scaling_report_json(const ScalingReport& rep)
{
    const ScalingConfig& c = rep.config;
    nlohmann::ordered_json j;
    j["kind"] = kind_name(c.kind);
    j["n"] = c.n;
    j["t"] = c.t;
    j["thetas"] = c.thetas;
    j["theta_hats"] = c.theta_hats;
    j["eps"] = c.eps_list;
    j["replicas"] = c.replicas;
    j["seed"] = c.seed;
    j["bootstrap"] = c.bootstrap;
    j["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : rep.runs) {
        nlohmann::ordered_json r;
        r["eps"] = run.eps;
        r["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : run.entries) {
            nlohmann::ordered_json x;
            x["j"] = e.j;
            x["k"] = e.k;
            x["t"] = e.t;
            x["side_means"] = {{"prelimit", e.mean_prelimit}, {"polymer", e.mean_polymer}};
            x["quantiles"] = {{"levels", {0.1, 0.5, 0.9}},
                              {"prelimit", e.quantiles_prelimit},
                              {"polymer", e.quantiles_polymer}};
            x["ks_stat"] = e.ks;
            x["ks_noise"] = e.ks_noise;
            r["entries"].push_back(std::move(x));
        }
        if (c.t >= 2)
            r["two_time_cov"] = {{"prelimit", run.two_time_cov_prelimit}, {"polymer", run.two_time_cov_polymer}};
        else
            r["two_time_cov"] = nullptr;
        j["runs"].push_back(std::move(r));
    }
    j["warnings"] = rep.warnings;
    return j.dump(2);
}

} // namespace qrsk
