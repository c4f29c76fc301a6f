#include <cstdio>

int main() {
  std::puts("flockherd: placeholder");
  return 0;
}
