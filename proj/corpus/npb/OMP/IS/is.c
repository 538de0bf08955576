#include <stdio.h>
#include <stdlib.h>
#include "../../SER/common/npbparams.h"

typedef int INT_TYPE;

INT_TYPE key_array[TOTAL_KEYS], key_buff1[MAX_KEY], key_buff2[TOTAL_KEYS];
INT_TYPE bucket_size[NUM_BUCKETS];

void rank(int iteration) {
  INT_TYPE i, k;
  INT_TYPE shift = 1;

  key_array[iteration] = iteration;

#pragma omp parallel for private(i)
  for (i = 0; i < NUM_BUCKETS; i++)
    bucket_size[i] = 0;

  for (i = 0; i < TOTAL_KEYS; i++)
    bucket_size[key_array[i] >> shift]++;

#pragma omp parallel
  {
#pragma omp for
    for (i = 0; i < MAX_KEY; i++)
      key_buff1[i] = 0;
#pragma omp single
    {
      for (k = 0; k < TOTAL_KEYS; k++)
        key_buff1[key_buff2[k]]++;
    }
#pragma omp barrier
  }

  for (i = 0; i < MAX_KEY - 1; i++)
    key_buff1[i + 1] += key_buff1[i];
}

int main(void) {
  int it;
  for (it = 1; it <= 10; it++)
    rank(it);
  printf("IS done %d\n", key_buff1[MAX_KEY - 1]);
  return 0;
}
