# Инициализация пакета core
