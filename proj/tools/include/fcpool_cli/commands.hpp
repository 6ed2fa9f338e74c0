#pragma once

#include "fcpool_cli/config.hpp"
#include "fcpool_cli/table.hpp"

namespace fcpool::cli {

Table pgf_table(RunConfig const& config);
Table pmf_table(RunConfig const& config);
Table moments_table(RunConfig const& config);
Table workload_table(RunConfig const& config);
Table waiting_table(RunConfig const& config);
Table at_time_table(RunConfig const& config);
Table geometric_table(RunConfig const& config);
Table simulate_table(RunConfig const& config);

/// Cross-oracle checks; status column holds PASS, FAIL or SKIP.
Table validate_table(RunConfig const& config);
bool table_passed(Table const& validation);

}  // namespace fcpool::cli
