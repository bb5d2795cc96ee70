"""
Корневой conftest: каталог репозитория попадает в sys.path, пакет poem_zo
импортируется в тестах без установки.
"""
