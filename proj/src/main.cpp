#include <iostream>

#include "sepcert/cli.hpp"

int main(int argc, char** argv) {
  const sepcert::CommandResult r = sepcert::run_cli({argv + 1, argv + argc});
  (r.exit_code == 3 ? std::cerr : std::cout) << r.report;
  return r.exit_code;
}
