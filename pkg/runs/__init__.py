# Инициализация пакета runs
