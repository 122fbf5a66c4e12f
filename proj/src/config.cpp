#include "sqzcool/config.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "sqzcool/error.hpp"

namespace sqzcool {

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double* field(ModelConfig& config, std::string_view key) {
  std::string_view section;
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
    if (section != "optomech" && section != "squeezer") return nullptr;
  }
  auto& om = config.optomech;
  auto& sq = config.squeezer;
  if (section != "squeezer") {
    if (key == "omega_m") return &om.omega_m;
    if (key == "gamma") return &om.gamma;
    if (key == "n_th") return &om.n_th;
    if (key == "kappa_a_s") return &om.kappa_a_s;
    if (key == "kappa_a_loss") return &om.kappa_a_loss;
    if (key == "delta_a") return &om.delta_a;
    if (key == "g") return &om.g;
  }
  if (section != "optomech") {
    if (key == "chi") return &sq.chi;
    if (key == "kappa_c_s") return &sq.kappa_c_s;
    if (key == "kappa_c_loss") return &sq.kappa_c_loss;
    if (key == "phi") return &sq.phi;
  }
  return nullptr;
}

void assign(ModelConfig& config, std::string_view key, std::string_view value,
            const std::string& where) {
  double* target = field(config, key);
  if (target == nullptr) {
    throw Error(ErrorKind::kConfigError,
                where + "unknown key '" + std::string(key) + "'");
  }
  double parsed = 0.0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  if (!value.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, parsed);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw Error(ErrorKind::kConfigError,
                where + "value of '" + std::string(key) +
                    "' is not a number: '" + std::string(value) + "'");
  }
  *target = parsed;
}

void assign_line(ModelConfig& config, std::string_view line,
                 const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorKind::kConfigError,
                where + "expected 'key = value', got '" + std::string(line) +
                    "'");
  }
  assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
}

}  // namespace

ModelConfig parse_config(std::istream& in) {
  ModelConfig config;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    assign_line(config, view, "line " + std::to_string(number) + ": ");
  }
  return config;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw Error(ErrorKind::kIoError, "cannot open config " + path.string());
  }
  return parse_config(file);
}

void apply_override(ModelConfig& config, std::string_view assignment) {
  assign_line(config, trim(assignment), "--set: ");
}

}  // namespace sqzcool
