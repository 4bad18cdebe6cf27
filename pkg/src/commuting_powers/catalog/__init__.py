# Named constructions, small-order enumeration and the scan harness.
