#include <cstdio>

int main() { return 0; } // placeholder while the library grows
