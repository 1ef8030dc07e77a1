#ifndef LIPBOUND_CORPUS_HPP
#define LIPBOUND_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lipbound/types.hpp"

namespace lipbound {

/// Location and value of a verified global minimum over the entry's box.
struct KnownMin {
  double value;
  Vec<double> point;
};

/// A built-in test function: analytic gradient and Hessian, derivative
/// extreme intervals over `box` (closed forms cross-checked against a
/// dense-grid scan, see tools/oracle_scan.cpp), and the known minimum
/// where one is established.
struct CorpusEntry {
  std::string name;
  FunctionModel model;
  BoxDomain<double> box;
  LipschitzBox<double> kappa_oracle;
  CurvatureBox<double> m_oracle;
  std::optional<KnownMin> known_min;
};

/// All built-in entries. Built once; every oracle interval is re-checked
/// against a derivative sample grid on first use.
const std::vector<CorpusEntry>& corpus_list();

/// Entry lookup by name; unknown names raise std::invalid_argument with
/// the list of available names.
const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace lipbound

#endif  // LIPBOUND_CORPUS_HPP
