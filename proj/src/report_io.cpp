#include "ksz/report_io.hpp"

#include <cstdio>

#include "json.hpp"
#include "ksz/error.hpp"

namespace ksz {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

json family_json(const GeneratorSpec& g) {
  json j{{"kind", std::string(to_string(g.kind))}, {"sg", g.sg}};
  j["bound"] = g.bound ? json(*g.bound) : json(nullptr);
  return j;
}

json spec_json(const ExperimentSpec& spec) {
  return json{{"id", std::string(to_string(spec.id))},
              {"family", family_json(spec.family)},
              {"r", spec.r},
              {"sizes", spec.sizes},
              {"trials", spec.trials},
              {"seed", spec.seed}};
}

json slope_json(const SlopeFit& fit) {
  return json{{"value", fit.slope}, {"intercept", fit.intercept}, {"half_width", fit.half_width}};
}

}  // namespace

ExperimentSpec spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("invalid config: ") + e.what());
  }
  try {
    require(j.is_object(), "invalid config: expected a JSON object");
    require(j.contains("id"), "invalid config: missing 'id'");
    require(j.contains("sizes"), "invalid config: missing 'sizes'");
    ExperimentSpec spec;
    spec.id = experiment_from_string(j.at("id").get<std::string>());
    if (j.contains("family")) {
      const auto& f = j.at("family");
      const std::string kind = f.is_string() ? f.get<std::string>() : f.at("kind").get<std::string>();
      spec.family = GeneratorSpec::of(family_from_string(kind));
    }
    spec.r = j.value("r", 2.0);
    spec.sizes = j.at("sizes").get<std::vector<std::uint64_t>>();
    spec.trials = j.value("trials", std::size_t{100});
    spec.seed = j.value("seed", std::uint64_t{42});
    return spec;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid config: ") + e.what());
  }
}

std::string spec_to_json(const ExperimentSpec& spec) { return spec_json(spec).dump(2); }

std::string report_to_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"size", row.size},   {"lhs", row.lhs},       {"rhs", row.rhs},  {"ratio", row.ratio},
           {"stderr", row.stderr_}, {"mean", row.mean}, {"driver", row.driver}};
    if (row.min_ratio) r["min_ratio"] = *row.min_ratio;
    if (row.max_ratio) r["max_ratio"] = *row.max_ratio;
    rows.push_back(std::move(r));
  }
  json meta = spec_json(report.spec);
  meta["version"] = kVersion;
  meta["lhs_statistic"] = report.lhs_statistic;
  meta["rhs_formula"] = report.rhs_formula;
  meta["ratio_cap"] = report.ratio_cap ? json(*report.ratio_cap) : json(nullptr);
  meta["notes"] =
      "Empirical Orlicz norms of finite samples underestimate tail weight; bands are ratio- and slope-based.";
  json out{{"rows", rows},
           {"slope", slope_json(report.slope)},
           {"mean_slope", slope_json(report.mean_slope)},
           {"ratio_slope", slope_json(report.ratio_slope)},
           {"meta", meta}};
  return out.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::string out = "size,lhs,rhs,ratio,stderr\n";
  char buf[256];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(row.size),
                  row.lhs, row.rhs, row.ratio, row.stderr_);
    out += buf;
  }
  return out;
}

}  // namespace ksz
