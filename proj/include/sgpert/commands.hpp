#pragma once

#include <iosfwd>

#include "sgpert/config.hpp"

namespace sgpert {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

// Each command writes its report files under cfg.out and a short summary to
// `log`. Configuration problems are reported on `err` with kExitConfigError.
int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_resolvent(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_contraction(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace sgpert
