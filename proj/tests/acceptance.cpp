// one PASS/FAIL line per acceptance criterion; exit status 1 if any fails
#include <iostream>

#include "f237/cli.hpp"

int main() {
  f237::RunConfig cfg;
  bool ok = true;
  for (int id = 1; id <= 13; ++id) {
    auto r = f237::run_check(id, cfg);
    std::cout << f237::report_line(r, true) << std::endl;
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}
