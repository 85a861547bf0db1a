#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "amen/eval.hpp"
#include "amen/focus.hpp"

namespace amen {

/// Render with `significant` digits; 0 means full precision (%.17g).
std::string format_number(double v, int significant = 6);

/// RFC 4180-ish quoting: fields containing separators, quotes or newlines
/// are wrapped and inner quotes doubled.
std::string csv_field(const std::string& value);

/// FNV-1a 64 over the file bytes, hex encoded. Used in run manifests.
std::string digest_file(const std::string& path);

struct RankingOutputOptions {
    int precision = 6;
};

void write_ranking_csv(const AttributedGraph& g, const std::vector<RankedNeighborhood>& rows,
                       std::ostream& out, const RankingOutputOptions& opt = {});
std::string ranking_json(const AttributedGraph& g, const std::vector<RankedNeighborhood>& rows,
                         const RankingOutputOptions& opt = {});

void write_eval_csv(const EvalReport& report, std::ostream& out,
                    const RankingOutputOptions& opt = {});
std::string eval_json(const EvalReport& report, const RankingOutputOptions& opt = {});

void write_distribution_csv(const std::vector<std::pair<double, double>>& table,
                            const char* value_name, const char* cumulative_name,
                            std::ostream& out, const RankingOutputOptions& opt = {});
void write_kth_positive_csv(const std::vector<std::pair<std::size_t, double>>& table,
                            std::ostream& out, const RankingOutputOptions& opt = {});

} // namespace amen
