#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iwg/arith.hpp"
#include "json.hpp"

namespace iwg::cli {

using OJson = nlohmann::ordered_json;

enum class Format { json, csv };

/// Shared global options.
struct Options {
  std::string config;
  std::string out;
  Format format = Format::json;
  std::optional<int> precision;
  std::optional<int> degree;
  std::optional<std::uint64_t> seed;
};

/// Tally of verification checks for the final RESULT line.
struct Tally {
  long count = 0;
  long failed = 0;
  bool add(bool ok) {
    ++count;
    if (!ok) ++failed;
    return ok;
  }
  bool pass() const { return failed == 0; }
};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }
inline std::string str(const Integer& x) { return x.get_str(); }
inline std::string str(const Rational& x) { return x.get_str(); }

/// Writes the document to --out or stdout.
inline void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InputError("cannot write output file '" + opt.out + "'");
  f << text;
}

inline void emit(const Options& opt, const OJson& doc) { emit(opt, doc.dump(2) + "\n"); }

inline int finish(const Tally& t) {
  std::cout << "RESULT: " << (t.pass() ? "PASS" : "FAIL") << " count=" << t.count << std::endl;
  return t.pass() ? 0 : 1;
}

inline std::string read_file(const std::string& path) {
  if (path.empty()) throw InputError("--config is required");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace iwg::cli
