#pragma once

// Serialization of the constants ledger and bound tables.

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supnorm/bounds.hpp"

namespace supnorm {

/// Fixed 12-significant-digit rendering used by every CSV writer.
std::string format_number(double v);

struct LedgerEntry {
    std::string name;
    std::optional<double> value;  // absent when the domain has no such datum
    int step;                     // pipeline step that produced the value
    std::string provenance;
};

std::vector<LedgerEntry> constants_ledger(const EffectiveConstants& c, const FundamentalDomain& d);
std::string ledger_to_csv(const std::vector<LedgerEntry>& ledger);
nlohmann::json ledger_to_json(const std::vector<LedgerEntry>& ledger);

std::string report_to_csv(const BoundReport& r);
nlohmann::json report_to_json(const BoundReport& r);
BoundReport report_from_json(const nlohmann::json& j);

/// Region label -> "k,bound" CSV body, for plotting bound curves.
std::map<std::string, std::string> report_plot_series(const BoundReport& r);

}  // namespace supnorm
