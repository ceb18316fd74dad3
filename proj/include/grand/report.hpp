#pragma once

// Structured report documents. Keys are sorted and every floating-point
// value is printed with 17 significant digits, so identical inputs give
// byte-identical documents.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "grand/convolution.hpp"
#include "grand/discrete.hpp"

namespace grand::report {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

Json to_json(const EpsilonProfile& profile);
Json to_json(const ClosureResult& closure);
Json to_json(const EmbeddingConstants& constants);
Json to_json(const BupuValidation& validation);
Json to_json(const WellSpreadReport& report);
Json to_json(const EquivalenceReport& report);
Json to_json(const SubmultiplicativityReport& report);
Json to_json(const AmalgamSubmultiplicativityReport& report);
Json to_json(const WitnessResult& witness);
Json to_json(const Window& window);

std::string format_double(double v);

void write_document(std::ostream& os, const Json& doc);
std::string to_document(const Json& doc);

/// "eps,value" header then one row per sampled eps, LF line endings.
std::string profile_csv(const EpsilonProfile& profile);

}  // namespace grand::report
