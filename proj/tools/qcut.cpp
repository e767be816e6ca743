#include "qcut/cli.hpp"

int main(int argc, char** argv) { return qcut::run(argc, argv); }
