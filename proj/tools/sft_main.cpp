#include "shiftprop/shiftprop.hpp"
int main(){return 0;}
