#pragma once

#include "qrep/cli/config.hpp"

namespace qrep::cli {

// Each command validates the configuration, computes its table, writes it to
// cfg.out (or stdout) in cfg.format, and returns the process exit code:
// 0 success, 4 when oracle-check finds a tolerance breach.  Infeasible
// targets and invalid configurations surface as exceptions for the caller
// to map onto exit codes 3 and 2.
int cmd_table1(const run_config& cfg);
int cmd_thresholds(const run_config& cfg);
int cmd_oracle_check(const run_config& cfg);
int cmd_simulate(const run_config& cfg);
int cmd_optimize(const run_config& cfg);

}  // namespace qrep::cli
