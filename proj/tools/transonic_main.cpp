#include <cstdio>

int main() {
    std::puts("transonic: placeholder");
    return 0;
}
