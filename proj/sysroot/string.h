#pragma once
#include <stddef.h>
void *memcpy(void *dst, const void *src, size_t n);
void *memmove(void *dst, const void *src, size_t n);
void *memset(void *dst, int c, size_t n);
int memcmp(const void *a, const void *b, size_t n) __attribute__((pure));
size_t strlen(const char *s) __attribute__((pure));
int strcmp(const char *a, const char *b) __attribute__((pure));
int strncmp(const char *a, const char *b, size_t n) __attribute__((pure));
char *strcpy(char *dst, const char *src);
char *strncpy(char *dst, const char *src, size_t n);
char *strcat(char *dst, const char *src);
char *strchr(const char *s, int c) __attribute__((pure));
char *strstr(const char *s, const char *t) __attribute__((pure));
