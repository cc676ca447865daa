#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "hkcce/config.hpp"
#include "hkcce/runner.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_out;
  if (const char* e = std::getenv("HKCCE_OUT")) env_out = e;

  hkcce::RunConfig cfg;
  try {
    cfg = hkcce::parse_config(args, env_out);
  } catch (const hkcce::HelpRequested& h) {
    std::cout << h.text;
    return hkcce::kExitOk;
  } catch (const hkcce::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return hkcce::kExitUsage;
  }

  try {
    return hkcce::run_command(cfg, std::cout).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hkcce::kExitFail;
  }
}
