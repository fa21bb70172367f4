#include "dedelab/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace dedelab {

using nlohmann::json;

const char* formula_name(Formula f) {
    switch (f) {
        case Formula::general_lift: return "general_lift";
        case Formula::prime_split: return "prime_split";
        case Formula::trivial_product: return "trivial_product";
        case Formula::trivial_product_2: return "trivial_product_2";
        case Formula::pm_one_product: return "pm_one_product";
        case Formula::mersenne_table: return "mersenne_table";
        case Formula::power_family: return "power_family";
        case Formula::d3_family: return "d3_family";
        case Formula::twisted: return "twisted";
    }
    return "?";
}

const char* nkind_name(NKind k) {
    switch (k) {
        case NKind::n: return "N";
        case NKind::n_d0: return "N_d0";
        case NKind::n_prime_d0: return "N_prime_d0";
    }
    return "?";
}

namespace {

std::string dump(const json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

json record_json(const ScanRecord& r) {
    return json{{"p", r.p},
                {"d", r.d},
                {"h", r.h},
                {"s", r.s_val.frac_str()},
                {"q_ratio", r.q_ratio}};
}

} // namespace

std::string to_json_string(const MomentResult& m, int indent) {
    json j{{"coefficient", m.coefficient.frac_str()},
           {"pi_sq_multiple", m.float_value},
           {"provenance", formula_name(m.provenance)}};
    return dump(j, indent);
}

std::string to_json_string(const NValue& n, int indent) {
    json j{{"value", n.value.frac_str()}, {"kind", nkind_name(n.kind)}};
    return dump(j, indent);
}

std::string to_json_string(const ScanSummary& s, int indent) {
    json j{{"max_p", s.max_p},
           {"d_max", s.d_max},
           {"primes_scanned", s.primes_scanned},
           {"evaluations", s.evaluations},
           {"csv_records", s.emitted},
           {"max_s12p", s.max_s12p},
           {"histogram",
            json{{"bucket_width", s.histogram.bucket_width}, {"counts", s.histogram.counts}}}};
    j["max_q"] = s.max_record ? record_json(*s.max_record) : json(nullptr);
    j["max_s12p_record"] = s.max_s12p_record ? record_json(*s.max_s12p_record) : json(nullptr);
    return dump(j, indent);
}

std::string to_json_string(const MersenneFitReport& r, int indent) {
    json classes = json::array();
    for (const MersenneFitClass& c : r.classes) {
        json jc{{"residue", c.residue},
                {"sample_d", c.sample_d},
                {"fitted", c.fitted},
                {"verified", c.fitted && c.verified}};
        json samples = json::array();
        for (const Rational& n : c.sample_n) samples.push_back(n.frac_str());
        jc["sample_n_prime"] = samples;
        if (c.fitted) {
            jc["a1"] = c.a1.frac_str();
            jc["a0"] = c.a0.frac_str();
        }
        if (c.has_table) jc["matches_table"] = c.matches_table;
        classes.push_back(std::move(jc));
    }
    json j{{"d0", r.d0}, {"ord2", r.ord2}, {"classes", classes}, {"skipped_d", r.skipped_d}};
    return dump(j, indent);
}

std::string check_report_json(const std::string& name, double lhs, double rhs, bool pass,
                              int indent) {
    double abs_err = std::fabs(lhs - rhs);
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    json j{{"name", name},
           {"lhs", lhs},
           {"rhs", rhs},
           {"abs_err", abs_err},
           {"rel_err", scale > 0 ? abs_err / scale : 0.0},
           {"pass", pass}};
    return dump(j, indent);
}

std::string scan_csv_header() { return "p,d,h,s_num,s_den,q_ratio"; }

std::string scan_csv_line(const ScanRecord& r) {
    char q[32];
    std::snprintf(q, sizeof q, "%.6g", r.q_ratio);
    return std::to_string(r.p) + "," + std::to_string(r.d) + "," + std::to_string(r.h) + "," +
           r.s_val.num_str() + "," + r.s_val.den_str() + "," + q;
}

} // namespace dedelab
