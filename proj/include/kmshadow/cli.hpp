// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: JSON config ingestion and the subcommand
// dispatcher. Exposed as a library function so tests can drive the CLI
// in-process.

#ifndef KMSHADOW_CLI_HPP
#define KMSHADOW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "kmshadow/channel.hpp"

namespace kmshadow {

// Parses the JSON config document. Accepted keys: nr, mu (scalar or
// array), kappa_db (scalar or array), m, rho, mean_snr_db, and optional
// series_tol, k_max. Unknown keys and malformed values raise
// ValidationError. dB quantities are converted to linear here, once.
ChannelConfig config_from_json(const std::string &json_text);
ChannelConfig config_from_json_file(const std::string &path);

// Runs one CLI invocation. argv excludes the program name. Output goes to
// `out`, diagnostics to `err`. Returns 0 on success, 2 when individual
// grid points failed but the run produced output, 1 on fatal errors.
int run_cli(const std::vector<std::string> &argv, std::ostream &out,
            std::ostream &err);

} // namespace kmshadow

#endif // KMSHADOW_CLI_HPP
