#pragma once

// Convention ledger: each sign or index choice where the published formulas
// and the rederived ones part ways, evaluated at one fixture and arbitrated
// by the oracle. The entry list is fixed per family.

#include <string>
#include <vector>

#include "ncspectra/config.hpp"
#include "ncspectra/report.hpp"

namespace ncspectra {

struct VerifyOutcome {
  Report report;
  /// The rederived solution meets its own contract: ODE residual <= 1e-8 and
  /// relative oracle gap <= 1e-4 (vacuously true when no closed form exists).
  bool contract_ok = true;
};

/// Uses the first theta and first m of the config. Throws OracleUnavailable
/// when the oracle is switched off or cannot be built.
VerifyOutcome run_verify(const RunConfig& config);

/// Entry names in emission order.
std::vector<std::string> ledger_entries(Family family);

}  // namespace ncspectra
