#pragma once

#include <stdexcept>
#include <string>

namespace syncwalk {

// A structural requirement of the requested operation does not hold
// (wrong chain class, hypotheses of the road coloring theorem violated,
// non-synchronizing support, out-of-range parameter...). CLI exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search or iteration ran out of its configured budget before
// reaching a verdict. CLI exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: unreadable files, bad JSON, fields of the wrong shape.
// CLI exit code 1.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace syncwalk
