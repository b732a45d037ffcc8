"""Process exit statuses shared by every command."""

EXIT_OK = 0
# a verification found an unflagged mismatch
EXIT_MISMATCH = 1
# a ClassificationError reached the driver
EXIT_ERROR = 2
