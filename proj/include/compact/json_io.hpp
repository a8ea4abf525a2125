#pragma once

#include "compact/ansatz.hpp"
#include "compact/fci.hpp"
#include "compact/pauli.hpp"
#include "compact/pipeline.hpp"
#include "compact/screening.hpp"

#include <json.hpp>

namespace compact {

nlohmann::ordered_json to_json(const ScreeningConfig& config);
nlohmann::ordered_json to_json(const ScreeningLedger& ledger);
nlohmann::ordered_json to_json(const Generator& gen);
nlohmann::ordered_json to_json(const Ansatz& ansatz);
nlohmann::ordered_json to_json(const ResourceCount& rc);
nlohmann::ordered_json to_json(const ScanRecord& record);

}  // namespace compact
