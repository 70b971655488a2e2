#include <iostream>
#include <string>
#include <vector>

#include "swpclock/errors.hpp"
#include "swpclock/sweep.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const swpclock::sweep::SweepSpec spec = swpclock::sweep::parse_cli(args);
        return swpclock::sweep::run_sweep(spec, std::cerr);
    } catch (const swpclock::sweep::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const swpclock::UsageError& e) {
        std::cerr << "swp-clock: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "swp-clock: " << e.what() << "\n";
        return 1;
    }
}
