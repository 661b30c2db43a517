#include "d2dmotif/report.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace d2dmotif {

namespace {

const std::vector<std::string> kColumns = {
    "source",         "config_hash",       "s_th",           "sigma2",           "lambda_p",
    "N",              "beta",              "e_star",         "e_chain_first",    "e_chain_second",
    "e_seeding",      "e_avg",             "outage_star",    "outage_chain",     "outage_chain_corr",
    "z_star",         "z_chain",           "truncation_bounds", "p_ss",          "c_o",
    "c_o_star",       "c_o_chain",         "p_r",            "c_r_star",         "c_r_chain",
    "eps_star",       "eps_chain",         "se_e_star",      "se_e_chain_first", "se_e_chain_second",
    "se_e_seeding",   "se_e_avg",          "se_outage_star", "se_outage_chain",  "se_outage_chain_corr",
};

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_header() {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    return out;
}

std::string csv_row(const ResultRow& row) {
    const NetworkConfig& c = row.config;
    const ThroughputReport& r = row.report;
    const MotifStatistics& m = row.stats;
    std::vector<std::string> f;
    f.reserve(kColumns.size());
    auto num = [&](double v) { f.push_back(format_number(v)); };

    f.push_back(row.source);
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(c)));
    f.push_back(hash);
    num(c.max_link_distance_m);
    num(c.scatter_variance);
    num(c.parent_density);
    f.push_back(std::to_string(c.devices_per_cluster));
    num(c.d2d_fraction);
    num(r.e_star);
    num(r.e_chain_first);
    num(r.e_chain_second);
    num(r.e_seeding);
    num(r.e_avg);
    num(r.outage_star);
    num(r.outage_chain);
    if (r.outage_chain_correlated) num(r.outage_chain_correlated->estimate);
    else f.emplace_back();
    num(r.z_star);
    num(r.z_chain);
    if (row.simulated) {
        f.emplace_back();
    } else {
        const TruncationBounds& t = r.truncation;
        f.push_back(format_number(t.star) + ';' + format_number(t.chain_first) + ';' +
                    format_number(t.chain_second) + ';' + format_number(t.seeding));
    }
    num(m.p_ss);
    num(m.c_o);
    num(m.c_o_star);
    num(m.c_o_chain);
    num(m.p_r);
    num(m.c_r_star);
    num(m.c_r_chain);
    num(m.eps_star);
    num(m.eps_chain);
    if (const auto& s = row.simulated) {
        num(s->se_star);
        num(s->se_chain_first);
        num(s->se_chain_second);
        num(s->se_seeding);
        num(s->se_avg);
        num(s->se_outage_star);
        num(s->se_outage_chain);
    } else {
        for (int i = 0; i < 7; ++i) f.emplace_back();
    }
    if (r.outage_chain_correlated) num(r.outage_chain_correlated->standard_error);
    else f.emplace_back();

    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ',';
        out += f[i];
    }
    return out;
}

}  // namespace d2dmotif
