#pragma once
#include <stddef.h>
int usleep(unsigned usec);
unsigned sleep(unsigned sec);
