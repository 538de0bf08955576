#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define VERBOSE 0

struct params {
  char name[16];
  int problem_size;
  int iterations;
};

static const struct params table[] = {
    {"S", 12, 4},
    {"W", 64, 8},
    {"A", 256, 16},
};

static int lookup(const char *cls) {
  int k;
  for (k = 0; k < (int)(sizeof(table) / sizeof(table[0])); k++) {
    if (strcmp(table[k].name, cls) == 0)
      return k;
  }
  return -1;
}

int main(int argc, char *argv[]) {
  FILE *fp;
  int k;
  if (argc != 3) {
    fprintf(stderr, "usage: setparams benchmark class\n");
    exit(1);
  }
  k = lookup(argv[2]);
  if (k < 0) {
    fprintf(stderr, "unknown class %s\n", argv[2]);
    return 1;
  }
  fp = fopen("npbparams.h", "w");
  if (fp == NULL)
    return 2;
  fprintf(fp, "#define PROBLEM_SIZE %d\n", table[k].problem_size);
  fprintf(fp, "#define NITER_DEFAULT %d\n", table[k].iterations);
  if (VERBOSE)
    printf("wrote parameters for %s\n", argv[1]);
  fclose(fp);
  return 0;
}
