#include <iostream>

int main() {
    std::cout << "tame: CLI under construction\n";
    return 0;
}
