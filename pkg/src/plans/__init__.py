# Plans package