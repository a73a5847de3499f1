#include "funnelctl/cli.hpp"

int main(int argc, char** argv) { return funnelctl::run_cli(argc, argv); }
