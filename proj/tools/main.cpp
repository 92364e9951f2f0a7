#include <iostream>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cout << "ctxcat: CLI pending\n";
  return 0;
}
