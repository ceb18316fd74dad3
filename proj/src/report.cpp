#include "grand/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace grand::report {

namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json bounds_json(const RatioBounds& b) { return Json{{"lower", b.lower}, {"upper", b.upper}}; }

void write_value(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_value(os, it.value(), depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_value(os, v, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : std::string("null"));
      return;
    }
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const EpsilonProfile& profile) {
  Json entries = Json::array();
  for (const auto& s : profile.entries) entries.push_back(Json{{"eps", s.eps}, {"value", s.value}});
  return Json{{"entries", std::move(entries)},
              {"argmax_eps", profile.argmax_eps},
              {"sup_value", profile.sup_value},
              {"zero_limit", optional_number(profile.zero_limit)}};
}

Json to_json(const ClosureResult& closure) {
  Json tail = Json::array();
  for (const auto& s : closure.tail) tail.push_back(Json{{"eps", s.eps}, {"value", s.value}});
  return Json{{"applicable", closure.applicable},
              {"in_closure", closure.in_closure},
              {"limit_estimate", closure.limit_estimate},
              {"tail", std::move(tail)},
              {"tail_monotone", closure.tail_monotone}};
}

Json to_json(const EmbeddingConstants& c) {
  return Json{{"c_upper", c.c_upper}, {"c_lower", c.c_lower}, {"eps", c.eps}};
}

Json to_json(const BupuValidation& v) {
  return Json{
      {"a", Json{{"pass", v.partition_pass && v.nonnegative},
                 {"max_sum_deviation", v.max_sum_deviation},
                 {"nonnegative", v.nonnegative},
                 {"violations", v.sum_violations}}},
      {"b", Json{{"pass", v.bound_pass}, {"measured_sup", v.measured_sup}}},
      {"c", Json{{"pass", v.support_pass}, {"violations", v.support_violations}}},
      {"d", Json{{"pass", v.overlap_pass}, {"max_overlap", v.max_overlap}}},
      {"all_pass", v.all_pass()}};
}

Json to_json(const WellSpreadReport& r) {
  return Json{{"is_u_dense", r.is_u_dense},
              {"is_relatively_separated", r.is_relatively_separated},
              {"is_separated", r.is_separated},
              {"separation_partition_count", r.separation_partition_count},
              {"uncovered", r.uncovered}};
}

Json to_json(const EquivalenceReport& r) {
  const auto& g = r.geometry;
  return Json{
      {"norms", Json{{"continuous", r.continuous}, {"discrete", r.discrete}, {"step", r.step}}},
      {"ratios", Json{{"continuous_discrete", optional_number(r.ratio_continuous_discrete)},
                      {"step_discrete", optional_number(r.ratio_step_discrete)},
                      {"continuous_step", optional_number(r.ratio_continuous_step)}}},
      {"bounds", Json{{"m_low", r.bounds.mass.m_low},
                      {"m_high", r.bounds.mass.m_high},
                      {"continuous_discrete", bounds_json(r.bounds.continuous_discrete)},
                      {"step_discrete", bounds_json(r.bounds.step_discrete)},
                      {"continuous_step", bounds_json(r.bounds.continuous_step)}}},
      {"geometry", Json{{"touch_overlap", g.touch_overlap},
                        {"touch_mass_max", g.touch_mass_max},
                        {"containment", g.containment},
                        {"containment_overlap", g.containment_overlap},
                        {"containment_mass_min", g.containment_mass_min},
                        {"cover_size", g.cover_size},
                        {"cover_multiplicity", g.cover_multiplicity},
                        {"sup_bound", g.sup_bound},
                        {"window_overlap", g.window_overlap},
                        {"translate_mass_min", g.translate_mass_min},
                        {"translate_mass_max", g.translate_mass_max}}},
      {"bupu_validation", to_json(r.validation)},
      {"within_bounds", r.within_bounds}};
}

Json to_json(const SubmultiplicativityReport& r) {
  Json rows = Json::array();
  for (const auto& y : r.per_eps) {
    rows.push_back(Json{{"eps", y.eps}, {"lhs", y.lhs}, {"rhs", y.rhs}, {"pass", y.pass}});
  }
  return Json{{"lhs", r.lhs},
              {"rhs", r.rhs},
              {"ratio", optional_number(r.ratio)},
              {"per_eps", std::move(rows)},
              {"young_constant", r.young_constant},
              {"hypotheses_met", r.hypotheses_met},
              {"pass", r.pass}};
}

Json to_json(const AmalgamSubmultiplicativityReport& r) {
  return Json{{"lhs", r.lhs},
              {"rhs", r.rhs},
              {"ratio", optional_number(r.ratio)},
              {"decoupled_bound", r.decoupled_bound},
              {"decoupled_gap", r.decoupled_gap},
              {"cover_size", r.cover_size},
              {"factor_sup_p", r.factor_sup_p},
              {"factor_sup_q", r.factor_sup_q},
              {"constant_C", r.constant_c},
              {"hypotheses_met", r.hypotheses_met},
              {"pass", r.pass}};
}

Json to_json(const WitnessResult& w) {
  return Json{{"m", w.m}, {"p", w.p}, {"ratio", w.ratio_m}, {"ratio_2m", w.ratio_2m}};
}

Json to_json(const Window& w) {
  return Json{{"members", w.members()}, {"mass", w.mass()}};
}

void write_document(std::ostream& os, const Json& doc) {
  write_value(os, doc, 0);
  os << "\n";
}

std::string to_document(const Json& doc) {
  std::ostringstream os;
  write_document(os, doc);
  return os.str();
}

std::string profile_csv(const EpsilonProfile& profile) {
  std::string out = "eps,value\n";
  for (const auto& s : profile.entries) {
    out += format_double(s.eps);
    out += ',';
    out += format_double(s.value);
    out += '\n';
  }
  return out;
}

}  // namespace grand::report
