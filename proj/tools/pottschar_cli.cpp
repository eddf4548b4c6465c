#include <pottschar/cli.hpp>

int main(int argc, char** argv) { return pottschar::run_cli(argc, argv, std::cout, std::cerr); }
