#ifndef LIPBOUND_CLI_HPP
#define LIPBOUND_CLI_HPP

#include <cstdint>
#include <string>

namespace lipbound {

/// One batch invocation. String fields hold the raw flag text; run()
/// parses and validates them so config-file and flag sources merge
/// uniformly.
struct RunConfig {
  std::string command;         ///< bound | estimate | enclose | verify | minimize
  std::string function;        ///< corpus entry name or "expr:<formula>"
  std::string box;             ///< "lo1:hi1,lo2:hi2,..."; corpus box when empty
  std::string xa;              ///< "v1,v2,..." segment start (bound; enclose anchor)
  std::string xb;              ///< "v1,v2,..." segment end (bound)
  std::uint64_t seed = 42;
  std::uint64_t pairs = 1000;
  double tol = 1e-6;
  std::uint64_t budget = 100000;
  std::string constants_path;  ///< CSV rows kappa,i,lo,hi and M,i,j,lo,hi
  std::string out_path;        ///< report file; stdout when empty
  std::string format = "csv";  ///< csv | jsonl
  bool local = false;          ///< segment-local / per-sub-box constants
};

/// Applies key=value lines (flag names without the leading dashes) from a
/// flat config file. Unknown keys raise std::invalid_argument.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Executes one command. Exit codes: 0 success, 1 usage error,
/// 2 verification failure, 3 numeric failure.
int run(const RunConfig& cfg);

}  // namespace lipbound

#endif  // LIPBOUND_CLI_HPP
