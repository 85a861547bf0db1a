#include "amen/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

namespace amen {

std::string format_number(double v, int significant) {
    char buf[64];
    if (significant <= 0)
        std::snprintf(buf, sizeof buf, "%.17g", v);
    else
        std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

std::string csv_field(const std::string& value) {
    bool needs_quote = false;
    for (char c : value) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r' || c == ';') {
            needs_quote = true;
            break;
        }
    }
    if (!needs_quote) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

namespace {

std::string join_attr_names(const AttributedGraph& g,
                            const std::vector<std::pair<AttrId, double>>& weights, bool names) {
    std::string out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ';';
        out += names ? g.attribute_name(weights[i].first) : std::to_string(weights[i].first);
    }
    return out;
}

std::string join_weights(const std::vector<std::pair<AttrId, double>>& weights, int precision) {
    std::string out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ';';
        out += format_number(weights[i].second, precision);
    }
    return out;
}

} // namespace

void write_ranking_csv(const AttributedGraph& g, const std::vector<RankedNeighborhood>& rows,
                       std::ostream& out, const RankingOutputOptions& opt) {
    out << "neighborhood_id,size,boundary_size,normality,anomalous_flag,"
           "focus_attr_ids,focus_weights,error\n";
    for (const auto& r : rows) {
        out << csv_field(r.id) << ',' << r.member_count << ',' << r.boundary_size << ',';
        if (r.error.empty()) {
            out << format_number(r.focus.score, opt.precision) << ','
                << (r.focus.anomalous ? 1 : 0) << ','
                << csv_field(join_attr_names(g, r.focus.weights, true)) << ','
                << csv_field(join_weights(r.focus.weights, opt.precision)) << ',';
        } else {
            out << ",,,," << csv_field(r.error);
        }
        out << '\n';
    }
}

std::string ranking_json(const AttributedGraph& g, const std::vector<RankedNeighborhood>& rows,
                         const RankingOutputOptions&) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["rank"] = r.rank;
        row["neighborhood_id"] = r.id;
        row["size"] = r.member_count;
        row["boundary_size"] = r.boundary_size;
        if (r.error.empty()) {
            row["normality"] = r.focus.score;
            row["anomalous"] = r.focus.anomalous;
            row["no_focus"] = r.focus.no_focus;
            auto focus = nlohmann::ordered_json::array();
            for (const auto& [f, w] : r.focus.weights)
                focus.push_back({{"attribute", g.attribute_name(f)}, {"weight", w}});
            row["focus"] = std::move(focus);
        } else {
            row["error"] = r.error;
        }
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

void write_eval_csv(const EvalReport& report, std::ostream& out, const RankingOutputOptions& opt) {
    out << "method,mode,intensity,ap,seed\n";
    for (const auto& row : report.rows) {
        out << to_string(row.method) << ',' << to_string(row.mode) << ','
            << format_number(row.intensity, opt.precision) << ','
            << format_number(row.average_precision, opt.precision) << ','
            << report.config.seed << '\n';
    }
}

std::string eval_json(const EvalReport& report, const RankingOutputOptions&) {
    nlohmann::ordered_json doc;
    doc["config"] = {{"mode", to_string(report.config.mode)},
                     {"intensities", report.config.intensities},
                     {"anomaly_fraction", report.config.anomaly_fraction},
                     {"size_min", report.config.size_min},
                     {"size_max", report.config.size_max},
                     {"seed", report.config.seed},
                     {"similarity", to_string(report.config.similarity)}};
    doc["targets"] = report.target_ids;
    doc["eligible_count"] = report.eligible_ids.size();
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows)
        doc["rows"].push_back({{"method", to_string(row.method)},
                               {"mode", to_string(row.mode)},
                               {"intensity", row.intensity},
                               {"ap", row.average_precision}});
    // per-method runtimes are wall-clock measurements and would break the
    // byte-identical reruns contract; they ride along in the run manifest
    return doc.dump(2) + "\n";
}

void write_distribution_csv(const std::vector<std::pair<double, double>>& table,
                            const char* value_name, const char* cumulative_name, std::ostream& out,
                            const RankingOutputOptions& opt) {
    out << value_name << ',' << cumulative_name << '\n';
    for (const auto& [v, c] : table)
        out << format_number(v, opt.precision) << ',' << format_number(c, opt.precision) << '\n';
}

void write_kth_positive_csv(const std::vector<std::pair<std::size_t, double>>& table,
                            std::ostream& out, const RankingOutputOptions& opt) {
    out << "k,mean_x\n";
    for (const auto& [k, v] : table)
        out << k << ',' << format_number(v, opt.precision) << '\n';
}

} // namespace amen
