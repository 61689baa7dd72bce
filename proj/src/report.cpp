#include "ringlab/report.hpp"

#include <json.hpp>

#include "ringlab/invariants.hpp"

namespace ringlab {

using json = nlohmann::json;  // ordered by key (std::map), so dumps are canonical

namespace {

json result_to_json(const CheckResult& r) {
    json j;
    j["check_id"] = r.check_id;
    j["ring"] = r.ring;
    j["params"] = r.params;
    j["status"] = check_status_name(r.status);
    if (r.witness) j["witness"] = *r.witness;
    j["checked"] = r.checked;
    j["vacuous"] = r.vacuous;
    return j;
}

}  // namespace

std::string suite_report_json(const SuiteRun& run, long long with_timing_ms) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["corpus"] = run.corpus;
    j["n_range"] = run.n_range;
    json results = json::array();
    for (const auto& r : run.results) results.push_back(result_to_json(r));
    j["results"] = std::move(results);

    std::map<std::string, std::array<std::uint32_t, 4>> per_check;
    json flagged = json::array();
    for (const auto& r : run.results) {
        auto& c = per_check[r.check_id];
        switch (r.status) {
            case CheckStatus::pass: ++c[0]; break;
            case CheckStatus::fail: ++c[1]; break;
            case CheckStatus::vacuous: ++c[2]; break;
            case CheckStatus::flagged: ++c[3]; break;
        }
        if (r.status == CheckStatus::flagged) {
            json f;
            f["check_id"] = r.check_id;
            f["ring"] = r.ring;
            f["note"] = r.witness ? *r.witness : "";
            flagged.push_back(std::move(f));
        }
    }
    json summary;
    summary["pass"] = run.pass;
    summary["fail"] = run.fail;
    summary["vacuous"] = run.vacuous;
    summary["flagged"] = run.flagged;
    json by_check;
    for (const auto& [id, c] : per_check) {
        json e;
        e["pass"] = c[0];
        e["fail"] = c[1];
        e["vacuous"] = c[2];
        e["flagged"] = c[3];
        std::string tier = "discriminating";
        if (id != "EVAL" && find_check(id).tier == CheckTier::consistency)
            tier = "consistency";
        e["tier"] = tier;
        by_check[id] = std::move(e);
    }
    summary["by_check"] = std::move(by_check);
    summary["flagged_discrepancies"] = std::move(flagged);
    j["summary"] = std::move(summary);
    if (with_timing_ms >= 0) j["timing_ms"] = with_timing_ms;
    return j.dump(2) + "\n";
}

std::string search_report_json(const SearchResult& res, const std::string& formula) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["formula"] = formula;
    j["scanned"] = res.scanned;
    j["matches"] = res.matches;
    return j.dump(2) + "\n";
}

std::string invariants_report_json(const FiniteRing& r) {
    const InvariantBundle& b = invariants_of(r);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["expr"] = r.name();
    j["size"] = r.size();
    auto set_to_json = [&](const Subset& s) {
        json a = json::array();
        for (Elem e : s.to_list()) {
            json el;
            el["id"] = e;
            el["label"] = r.label(e);
            a.push_back(std::move(el));
        }
        return a;
    };
    j["units"] = set_to_json(b.units);
    j["jacobson"] = set_to_json(b.jacobson);
    j["delta"] = set_to_json(b.delta);
    j["nilpotents"] = set_to_json(b.nilpotents);
    j["idempotents"] = set_to_json(b.idempotents);
    j["center"] = set_to_json(b.center);
    j["prime_radical"] = set_to_json(b.prime_radical);
    json orders;
    for (const auto& [u, ord] : b.unit_orders) orders[std::to_string(u)] = ord;
    j["unit_orders"] = std::move(orders);
    j["delta_u_exponent"] = b.delta_u_exponent;
    j["exponent_lcm"] = b.exponent_lcm;
    DeltaUExponent e = delta_u_exponent(r);
    j["valid_exponents"] = e.valid_exponents;
    return j.dump(2) + "\n";
}

}  // namespace ringlab
