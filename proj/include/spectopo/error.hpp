#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spectopo {

using Elem = std::size_t;

/// Base of every error thrown by the library. Errors that concern a concrete
/// structure carry a witness tuple of element indices that reproduces the
/// violation when replayed.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message, std::vector<Elem> witness = {})
      : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const noexcept { return code_; }
  const std::vector<Elem>& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  std::vector<Elem> witness_;
};

inline std::string witness_text(const std::vector<Elem>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

inline Error make_error(const std::string& code, std::vector<Elem> witness, const std::string& detail = {}) {
  std::string msg = code + witness_text(witness);
  if (!detail.empty()) msg += ": " + detail;
  return Error(code, msg, std::move(witness));
}

}  // namespace spectopo
