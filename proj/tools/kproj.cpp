#include "kproj/cli/commands.hpp"

int main(int argc, char** argv)
{
    return kproj::cli::run_cli(argc, argv);
}
