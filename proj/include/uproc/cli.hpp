#pragma once

#include <string>
#include <vector>

namespace uproc {

// Exit codes: 0 ok, 2 parse/config failure, 3 enumeration cap exceeded,
// 4 non-coercive loss, 5 analysis hard failure, 6 estimator failure during
// simulation. stdout carries JSON only; diagnostics go to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace uproc
