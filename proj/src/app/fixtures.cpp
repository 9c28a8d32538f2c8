#include <fstream>

#include "orlicz_lab/app.hpp"
#include "orlicz_lab/errors.hpp"

namespace orlicz_lab::app {

namespace {

json base(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"seed", kDefaultSeed}};
}

json grid01() { return {{"lo", 1e-3}, {"hi", 1.0}, {"n", 32}}; }

}  // namespace

std::vector<std::string> fixture_names() {
  return {"example-2-10", "example-2-11", "lpq-divergent", "lpq-bounded", "essnorm-limsup"};
}

json fixture(const std::string& name) {
  if (name == "example-2-10") {
    // [-1, 1] with dw / 2, symmetric blocks; E(f)(w) = (f(w) + f(-w)) / 2.
    json c = base("verify-all");
    c["young"] = {{"phi", {{"family", "exp_power"}, {"p", 2}}},
                  {"psi", {{"family", "power_scaled"}, {"p", 2}}},
                  {"theta", {{"family", "entropy"}, {"p", 2}}}};
    c["space"] = {{"builder", "symmetric"}, {"n_cells", 100}};
    c["weight"] = {{"expr", "w"}};
    c["params"] = {{"C", 4},       {"C_source", "example"}, {"gch_second", "psi"}, {"grid", grid01()},
                   {"samples", 200}, {"budget", 40}};
    return c;
  }
  if (name == "example-2-11") {
    json c = base("verify-all");
    c["young"] = {{"phi", {{"family", "exp_quartic"}}},
                  {"psi", {{"family", "log_quotient"}}},
                  {"theta",
                   {{"family", "compose_of"},
                    {"outer", {{"family", "conjugate_of"}, {"of", "phi"}}},
                    {"inner", {{"family", "power"}, {"p", 2}}},
                    {"invert_inner", false}}}};
    c["space"] = {{"builder", "rotation"}, {"n", 4}, {"cells_per_interval", 25}};
    c["weight"] = {{"expr", "1 + w"}};
    c["params"] = {{"C", "structural"}, {"grid", grid01()}, {"samples", 200}, {"budget", 40}};
    return c;
  }
  if (name == "lpq-divergent" || name == "lpq-bounded") {
    json c = base("criteria");
    c["space"] = {{"builder", "symbolic"}, {"mass", "2^(-n)"}};
    c["weight"] = {{"expr", name == "lpq-divergent" ? "1" : "2^(-n)"}};
    c["params"] = {{"which", "rem26"}, {"p", 2}, {"q", 3}};
    return c;
  }
  if (name == "essnorm-limsup") {
    json c = base("essnorm");
    c["young"] = {{"phi", {{"family", "power_scaled"}, {"p", 2}}}};
    c["space"] = {{"builder", "symbolic"}, {"mass", "2^(-n)"}};
    c["weight"] = {{"expr", "1 + 1/n"}};
    c["params"] = {{"C", 1}, {"ks", {1, 2, 4, 8, 16, 32, 64}}};
    return c;
  }
  throw ArgumentError("unknown fixture '" + name + "'");
}

std::filesystem::path emit_fixture(const std::string& name, const std::filesystem::path& dir) {
  const json c = fixture(name);
  std::filesystem::create_directories(dir);
  const auto file = dir / (name + ".json");
  std::ofstream out(file);
  if (!out) throw ConfigError(file.string(), "cannot write file");
  out << c.dump(2) << '\n';
  return file;
}

}  // namespace orlicz_lab::app
