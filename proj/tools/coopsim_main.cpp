#include <exception>
#include <iostream>

#include "coopsim/cli.hpp"
#include "coopsim/errors.hpp"

int main(int argc, char** argv) {
    try {
        const auto spec = coopsim::cli::parse_args(argc, argv);
        if (!spec) return 0;  // help
        coopsim::cli::run(*spec);
        return 0;
    } catch (const coopsim::Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run with --help for options\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
