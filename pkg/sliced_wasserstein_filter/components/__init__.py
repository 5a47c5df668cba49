# Components package
