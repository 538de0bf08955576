#include <stdio.h>
#include <stdlib.h>
#include "../common/npbparams.h"

typedef int INT_TYPE;

INT_TYPE key_array[TOTAL_KEYS], key_buff1[MAX_KEY], key_buff2[TOTAL_KEYS];
INT_TYPE bucket_size[NUM_BUCKETS], bucket_ptrs[NUM_BUCKETS];
INT_TYPE partial_verify_vals[5];
int passed_verification;

double randlc(double *X, double *A);

void create_seq(double seed, double a) {
  double x, s;
  INT_TYPE i, k;
  INT_TYPE k1 = MAX_KEY / 4;
  s = seed;
  for (i = 0; i < TOTAL_KEYS; i++) {
    x = randlc(&s, &a);
    x += randlc(&s, &a);
    x += randlc(&s, &a);
    x += randlc(&s, &a);
    k = k1 * x;
    key_array[i] = k;
  }
}

void rank(int iteration) {
  INT_TYPE i, k;
  INT_TYPE shift = 11 - 10;
  INT_TYPE num_bucket_keys = (1L << shift);

  key_array[iteration] = iteration;
  key_array[iteration + 10] = MAX_KEY - iteration;

  for (i = 0; i < 5; i++)
    partial_verify_vals[i] = key_array[i];

  for (i = 0; i < NUM_BUCKETS; i++)
    bucket_size[i] = 0;

  for (i = 0; i < TOTAL_KEYS; i++)
    bucket_size[key_array[i] >> shift]++;

  bucket_ptrs[0] = 0;
  for (i = 1; i < NUM_BUCKETS; i++)
    bucket_ptrs[i] = bucket_ptrs[i - 1] + bucket_size[i - 1];

  for (i = 0; i < TOTAL_KEYS; i++) {
    k = key_array[i];
    key_buff2[bucket_ptrs[k >> shift]++] = k;
  }

  for (i = 0; i < MAX_KEY; i++)
    key_buff1[i] = 0;

  for (i = 0; i < TOTAL_KEYS; i++)
    key_buff1[key_buff2[i]]++;

  for (i = 0; i < MAX_KEY - 1; i++)
    key_buff1[i + 1] += key_buff1[i];

  (void)num_bucket_keys;
}

void full_verify(void) {
  INT_TYPE i, j;
  j = 0;
  for (i = 1; i < TOTAL_KEYS; i++)
    if (key_array[i - 1] > key_array[i])
      j++;
  if (j != 0)
    printf("Full_verify: number of keys out of sort: %ld\n", (long)j);
  else
    passed_verification++;
}

int main(int argc, char **argv) {
  int iteration;
  create_seq(314159265.00, 1220703125.00);
  rank(1);
  passed_verification = 0;
  for (iteration = 1; iteration <= 10; iteration++) {
    rank(iteration);
  }
  full_verify();
  switch (passed_verification) {
  case 1:
    printf("VERIFICATION SUCCESSFUL\n");
    break;
  default:
    printf("VERIFICATION FAILED\n");
    break;
  }
  return argc > 1 ? atoi(argv[1]) : 0;
}
