#include "vmdg/config.hpp"
#include "vmdg/errors.hpp"
#include "vmdg/simulation.hpp"
#include "vmdg/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vmdg::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_mesh_list(const std::string& arg) {
  std::vector<int> meshes;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int n = std::stoi(item);
    if (n < 1) throw vmdg::ConfigError("mesh size must be >= 1");
    meshes.push_back(n);
  }
  return meshes;
}

void print_presets() {
  using vmdg::PresetId;
  for (PresetId id : {PresetId::weibel_run1, PresetId::weibel_run2}) {
    vmdg::WeibelParams p = vmdg::preset_params(id);
    std::cout << vmdg::preset_name(id) << ": beta = " << p.beta << ", b = " << p.b
              << ", delta = " << p.delta << ", v01 = " << p.v01 << ", v02 = " << p.v02
              << ", k0 = " << p.k0 << " (L = 2*pi/k0)\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-conserving discontinuous Galerkin solver for the 1D2V "
               "Vlasov-Maxwell system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mesh_arg;

  auto* run_cmd = app.add_subcommand("run", "Integrate a configured problem and emit CSVs");
  run_cmd->add_option("config", config_path, "Config file (key = value lines)")->required();

  auto* acc_cmd =
      app.add_subcommand("accuracy", "Time-reversal convergence study over a mesh sequence");
  acc_cmd->add_option("config", config_path, "Config file (key = value lines)")->required();
  acc_cmd->add_option("--meshes", mesh_arg, "Comma-separated cube mesh sizes, e.g. 16,32,64")
      ->required();

  auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");
  auto* version_cmd = app.add_subcommand("version", "Print version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets_cmd->parsed()) {
      print_presets();
      return 0;
    }
    if (version_cmd->parsed()) {
      std::cout << "vmdg " << vmdg::version_string << "\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      vmdg::RunManifest manifest = vmdg::parse_config(read_file(config_path));
      vmdg::RunResult result = vmdg::run_simulation(manifest);
      if (result.aborted) {
        std::cerr << "run aborted: " << result.abort_message << "\n"
                  << "partial outputs flagged in " << manifest.out_dir << "/ABORTED\n";
        return 2;
      }
      std::cout << "run complete: " << result.diagnostics.size() << " diagnostics records in "
                << manifest.out_dir << "\n";
      return 0;
    }
    if (acc_cmd->parsed()) {
      vmdg::RunManifest manifest =
          vmdg::parse_config(read_file(config_path), /*accuracy_defaults=*/true);
      std::vector<int> meshes = parse_mesh_list(mesh_arg);
      auto rows = vmdg::reversal_accuracy_study(manifest, meshes, &std::cout);
      std::filesystem::create_directories(manifest.out_dir);
      vmdg::write_convergence_csv(manifest.out_dir + "/convergence.csv", rows);
      for (const auto& row : rows)
        std::cout << row.mesh_n << "^3  " << row.field << "  " << vmdg::format_real(row.l2_error)
                  << "  " << vmdg::format_real(row.order) << "\n";
      return 0;
    }
  } catch (const vmdg::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
