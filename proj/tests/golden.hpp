#pragma once

// Golden files of error messages. Each case is an `input:` line, with "\n"
// standing for a newline, followed by an `error:` line. Setting
// SPECTOPO_REGEN_GOLDEN rewrites the error lines from the current output.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

struct Case {
  std::string input;
  std::string error;
};

inline std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '\n' ? std::string("\\n") : std::string(1, c);
  return out;
}

inline std::vector<Case> read(const std::string& path) {
  std::ifstream in(path);
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("input: ", 0) == 0) out.push_back({unescape(line.substr(7)), ""});
    else if (line.rfind("error: ", 0) == 0 && !out.empty()) out.back().error = line.substr(7);
  }
  return out;
}

inline bool regenerate() { return std::getenv("SPECTOPO_REGEN_GOLDEN") != nullptr; }

/// Runs every case through `message` (which returns the error text, or
/// "no error"). Returns the cases whose output differs from the file.
inline std::vector<std::string> check(const std::string& path,
                                      const std::function<std::string(const std::string&)>& message) {
  std::vector<Case> cases = read(path);
  std::vector<std::string> diffs;
  for (Case& c : cases) {
    const std::string got = message(c.input);
    if (got != c.error) diffs.push_back(escape(c.input) + "\n  want: " + c.error + "\n  got:  " + got);
    c.error = got;
  }
  if (regenerate()) {
    std::ofstream out(path);
    for (const Case& c : cases) out << "input: " << escape(c.input) << "\nerror: " << c.error << "\n\n";
    diffs.clear();
  }
  if (cases.empty()) diffs.push_back("no cases in " + path);
  return diffs;
}

}  // namespace golden
