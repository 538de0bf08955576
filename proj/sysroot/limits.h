#pragma once
#define INT_MAX 2147483647
#define INT_MIN (-INT_MAX - 1)
#define LONG_MAX 9223372036854775807L
#define UINT_MAX 4294967295U
#define CHAR_BIT 8
