#include <cstdio>

int main() {
  std::puts("leggett cli placeholder");
  return 0;
}
