// Tiny computable-number oracle speaking the line protocol:
//   REFINE <index> <p>  ->  BALL <re> <im> <radius>
// modes: sqrt2 (index 0 is sqrt(2)), third (everything is 1/3),
//        bad (radius violates the 2^-p contract).

#include <iostream>
#include <string>

#include "zeq/rat.hpp"

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "sqrt2";
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.rfind("REFINE", 0) != 0) continue;
    long index = 0;
    unsigned long p = 0;
    if (sscanf(line.c_str(), "REFINE %ld %lu", &index, &p) != 2) return 1;
    if (mode == "bad") {
      std::cout << "BALL 1/1 0/1 1/1\n" << std::flush;
      continue;
    }
    if (mode == "third") {
      std::cout << "BALL 1/3 0/1 0/1\n" << std::flush;
      continue;
    }
    zeq::Rat two(2);
    unsigned prec = static_cast<unsigned>(p) + 8;
    zeq::Rat lo = two.sqrt_lb(prec), hi = two.sqrt_ub(prec);
    zeq::Rat c = (lo + hi) * zeq::Rat(1, 2);
    zeq::Rat r = (hi - lo) * zeq::Rat(1, 2);
    std::cout << "BALL " << c.str() << " 0/1 " << r.str() << "\n" << std::flush;
  }
  return 0;
}
