#pragma once

#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "lampwalk/analyze.hpp"
#include "lampwalk/simulate.hpp"
#include "lampwalk/walk.hpp"

namespace lampwalk {

inline constexpr int kFormatVersion = 1;

std::string family_name(Family f);  // "21" or "12"
Family parse_family(const std::string& s);

nlohmann::json to_json(const PerturbParams& p);
nlohmann::json to_json(const WalkModel& m);
nlohmann::json to_json(const SeriesDiagnostic& d);

// JSON documents carry format_version, a kind tag, the model and `meta`.
nlohmann::json to_json(const MaxDistribution& d, const WalkModel& m,
                       const nlohmann::json& meta = nlohmann::json::object());
nlohmann::json to_json(const EmpiricalDist& d, const WalkModel& m,
                       const nlohmann::json& meta = nlohmann::json::object());

// CSV: optional '#' preamble lines carrying format_version and meta, then the
// header row. oracle, when non-empty, adds an oracle_prob column.
void write_csv(std::ostream& os, const MaxDistribution& d,
               const nlohmann::json& meta = nullptr, const std::vector<double>& oracle = {});
void write_csv(std::ostream& os, const EmpiricalDist& d, const nlohmann::json& meta = nullptr);
// n,value,predicted,ratio
void write_plot_csv(std::ostream& os, const std::vector<Checkpoint>& values,
                    const std::vector<double>& predicted, const nlohmann::json& meta = nullptr);

// Reads n and the named value column (default prob) from a table CSV.
Table read_table_csv(const std::filesystem::path& path, const std::string& column = "prob");

}  // namespace lampwalk
