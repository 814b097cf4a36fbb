#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "strataforge/render.hpp"

namespace sf = strataforge;

namespace {

constexpr int kConfigExit = 2;
constexpr int kConsistencyExit = 3;

using Renderer = std::function<std::string(sf::Report&, const std::string&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit strata, enhanced Hasse diagrams and naive limits for real forms of flag varieties"};
  app.require_subcommand(1, 1);
  const std::map<std::string, std::pair<std::string, Renderer>> commands{
      {"cartans", {"Cartan classes and Cayley transforms", sf::render_cartans}},
      {"orbits", {"real-group orbits on the flag variety", sf::render_orbits}},
      {"hasse", {"enhanced Hasse diagram", sf::render_hasse}},
      {"mhd", {"Hodge diamonds h^{p,q} of every orbit", sf::render_mhd}},
      {"classify", {"polarizability, cuspidality and dimensions of every stratum", sf::render_classify}},
      {"limit", {"naive limit of the configured limiting data", sf::render_limit}},
  };
  std::string config_path, format;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "YAML configuration file")->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "ascii", "dot"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    sf::Report report(sf::parse_config_file(config_path));
    std::string fmt = format.empty() ? report.config().format : format;
    std::cout << commands.at(name).second(report, fmt);
    if (name == "classify") {
      for (const auto& c : report.classes()) {
        if (c.polarizability.verdict == sf::Polarizability::undetermined) {
          std::cerr << "warning: polarizability undetermined for some strata; raise search_height or search_cap\n";
          break;
        }
      }
    }
  } catch (const sf::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kConfigExit;
  } catch (const sf::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kConsistencyExit;
  } catch (const std::exception& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kConsistencyExit;
  }
  return 0;
}
