#include <iostream>
int main() { std::cout << "tropicore\n"; return 0; }
