#pragma once
// Helpers shared by the test binaries.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "polarbench/dataset.hpp"
#include "polarbench/taskgen.hpp"

namespace testing {

namespace fs = std::filesystem;

/// Fresh directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("polarbench_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

inline size_t count_substr(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

/// Contents of <g id="name"> ... </g> (groups are not nested in our output).
inline std::string svg_group(const std::string& svg, const std::string& name) {
  const std::string open = "<g id=\"" + name + "\">";
  const auto a = svg.find(open);
  if (a == std::string::npos) return {};
  const auto b = svg.find("</g>", a);
  return svg.substr(a + open.size(), b - a - open.size());
}

struct SvgText {
  double x = 0, y = 0, font = 0;
  std::string body;
};

inline std::vector<SvgText> svg_texts(const std::string& fragment) {
  static const std::regex re(R"re(<text x="([-0-9.]+)" y="([-0-9.]+)" font-size="([0-9.]+)"[^>]*>([^<]*)</text>)re");
  std::vector<SvgText> out;
  for (std::sregex_iterator it(fragment.begin(), fragment.end(), re), end; it != end; ++it) {
    out.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3]), (*it)[4]});
  }
  return out;
}

/// Every number in the d attributes of <path> elements, one vector per path.
inline std::vector<std::vector<double>> svg_path_numbers(const std::string& fragment) {
  static const std::regex path_re(R"re(<path d="([^"]*)")re");
  static const std::regex num_re(R"re(-?[0-9]+(\.[0-9]+)?)re");
  std::vector<std::vector<double>> out;
  for (std::sregex_iterator it(fragment.begin(), fragment.end(), path_re), end; it != end; ++it) {
    const std::string d = (*it)[1];
    std::vector<double> nums;
    for (std::sregex_iterator n(d.begin(), d.end(), num_re), e; n != e; ++n) nums.push_back(std::stod(n->str()));
    out.push_back(std::move(nums));
  }
  return out;
}

/// A small dataset (2 pairs per task, word-search variants included), built
/// once per test binary.
inline const polarbench::Dataset& small_dataset() {
  static const polarbench::Dataset ds = [] {
    polarbench::GenConfig cfg;
    cfg.n_per_task = 2;
    cfg.base_seed = 11;
    return polarbench::generate_dataset(polarbench::catalog(), cfg);
  }();
  return ds;
}

inline std::vector<polarbench::Instance> owned(const std::vector<const polarbench::Instance*>& v) {
  std::vector<polarbench::Instance> out;
  for (const auto* p : v) out.push_back(*p);
  return out;
}

}  // namespace testing
