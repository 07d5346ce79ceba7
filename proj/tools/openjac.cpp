#include <cstdio>
int main() { std::puts("openjac placeholder"); return 0; }
