#pragma once

// Reproducible checks of the extremal results, one suite per statement, each
// producing a table of expected versus observed values.

#include <string>
#include <vector>

#include "bmx/graph.hpp"

namespace bmx {

struct VerifyOptions {
  /// Largest dimension searched by suites that sweep n.
  int max_n = 5;
  int threads = 1;
};

struct VerifyRow {
  std::string check;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct VerifySuite {
  std::string name;
  std::vector<VerifyRow> rows;
  double elapsed_ms = 0;

  bool pass() const;
};

std::vector<std::string> verify_suite_names();

/// Throws UsageError for an unknown suite name.
VerifySuite run_verify(const std::string& name, const VerifyOptions& options = {});

/// Connected graphs on exactly `n` vertices, one per isomorphism class, in
/// increasing order of their minimal adjacency encoding. n <= 6.
std::vector<SimpleGraph> connected_graphs(int n);

}  // namespace bmx
