#include "mubkit/cli/app.hpp"

int main(int argc, char** argv) { return mubkit::cli::run(argc, argv); }
