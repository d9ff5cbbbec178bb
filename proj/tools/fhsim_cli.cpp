#include <iostream>

int main() {
  std::cout << "fhsim\n";
  return 0;
}
