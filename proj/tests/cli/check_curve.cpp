// SPDX-License-Identifier: Apache-2.0
// Usage: check_curve <csv> <tol>. Exits 0 when the header is right and some sample lies within tol of 0.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  if (argc != 3) return 2;
  std::ifstream in(argv[1]);
  std::string line;
  if (!std::getline(in, line) || line != "segment,param,re,im") {
    std::cout << "bad header\n";
    return 1;
  }
  double min_mod = INFINITY;
  long rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string seg, param, re, im;
    std::getline(ss, seg, ',');
    std::getline(ss, param, ',');
    std::getline(ss, re, ',');
    std::getline(ss, im, ',');
    min_mod = std::min(min_mod, std::hypot(std::stod(re), std::stod(im)));
    ++rows;
  }
  std::cout << rows << " rows, min modulus " << min_mod << '\n';
  return rows > 0 && min_mod < std::stod(argv[2]) ? 0 : 1;
}
